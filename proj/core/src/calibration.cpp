#include "driftguard/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "driftguard/math.hpp"
#include "driftguard/rng.hpp"

namespace driftguard {

namespace {

void require_scores(std::span<const double> scores) {
  if (scores.size() < 2) throw InsufficientData("calibration needs at least two scores");
  for (double s : scores) require(std::isfinite(s), "calibration scores must be finite");
}

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be a positive finite number");
}

void require_alpha_boot(double alpha_boot) {
  require(alpha_boot > 0.0 && alpha_boot < 0.5, "alpha_boot must lie in (0, 0.5)");
}

// Per-score exponents lambda (S_j - S_max) and the offset lambda (S_max - mu_hat).
struct ShiftedExponents {
  std::vector<double> exponent;
  std::vector<double> weight;  // exp(exponent)
  double offset = 0.0;
};

ShiftedExponents shift_exponents(std::span<const double> scores, double mu_hat, double lambda) {
  const double hi = *std::max_element(scores.begin(), scores.end());
  ShiftedExponents out;
  out.offset = lambda * (hi - mu_hat);
  out.exponent.reserve(scores.size());
  out.weight.reserve(scores.size());
  for (double s : scores) {
    const double e = lambda * (s - hi);
    out.exponent.push_back(e);
    out.weight.push_back(std::exp(e));
  }
  return out;
}

}  // namespace

void CalibrationSummary::validate() const {
  require(std::isfinite(mu_hat), "mu_hat must be finite");
  require_lambda(lambda);
  require(std::isfinite(psi_plugin) && std::isfinite(psi_bar), "psi values must be finite");
  require(n >= 1, "calibration size must be positive");
  require_alpha_boot(alpha_boot);
  require(bootstrap_B >= 1, "bootstrap_B must be positive");
}

double fit_mu_hat(std::span<const double> cal_scores) {
  require_scores(cal_scores);
  double total = 0.0;
  for (double s : cal_scores) total += s;
  return total / static_cast<double>(cal_scores.size());
}

double psi_plugin(std::span<const double> cal_scores, double mu_hat, double lambda) {
  require_scores(cal_scores);
  require_lambda(lambda);
  require(std::isfinite(mu_hat), "mu_hat must be finite");
  std::vector<double> exponents;
  exponents.reserve(cal_scores.size());
  for (double s : cal_scores) exponents.push_back(lambda * (s - mu_hat));
  const double value = log_sum_exp(exponents) - std::log(static_cast<double>(cal_scores.size()));
  if (!std::isfinite(value)) throw std::overflow_error("plug-in log-MGF is not finite");
  return value;
}

std::vector<double> bootstrap_log_mgf_samples(std::span<const double> cal_scores, double mu_hat,
                                              double lambda, std::uint64_t B, std::uint64_t seed) {
  require_scores(cal_scores);
  require_lambda(lambda);
  require(B >= 1, "bootstrap needs at least one resample");

  const auto n = cal_scores.size();
  const ShiftedExponents shifted = shift_exponents(cal_scores, mu_hat, lambda);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<double> out(B);
  std::vector<std::size_t> picks(n);
  for (std::uint64_t b = 0; b < B; ++b) {
    SplitMix64 engine = make_engine(seed, StreamTag::kBootstrap, b);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      picks[j] = pick(engine);
      sum += shifted.weight[picks[j]];
    }
    double log_sum = 0.0;
    if (sum >= std::numeric_limits<double>::min()) {
      log_sum = std::log(sum);
    } else {
      // Every drawn weight underflowed; redo the sum around the resample's own max.
      std::vector<double> drawn(n);
      for (std::size_t j = 0; j < n; ++j) drawn[j] = shifted.exponent[picks[j]];
      log_sum = log_sum_exp(drawn);
    }
    out[b] = shifted.offset + log_sum - log_n;
  }
  return out;
}

double type1_quantile(std::vector<double> values, double level) {
  require(!values.empty(), "quantile of an empty set");
  require(level > 0.0 && level <= 1.0, "quantile level must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  const auto count = static_cast<double>(values.size());
  // Smallest k with k / count >= level; the slack absorbs rounding in level * count.
  auto k = static_cast<std::size_t>(std::ceil(level * count - 1e-9));
  k = std::clamp<std::size_t>(k, 1, values.size());
  return values[k - 1];
}

double bootstrap_psi_bar(std::span<const double> cal_scores, double mu_hat, double lambda,
                         std::uint64_t B, double alpha_boot, std::uint64_t seed) {
  require_alpha_boot(alpha_boot);
  // ln is monotone, so the quantile of ln m equals ln of the quantile of m.
  return type1_quantile(bootstrap_log_mgf_samples(cal_scores, mu_hat, lambda, B, seed),
                        1.0 - alpha_boot);
}

CalibrationSummary fit_calibration(std::span<const double> cal_scores, double lambda,
                                   const BootstrapOptions& boot) {
  CalibrationSummary out;
  out.mu_hat = fit_mu_hat(cal_scores);
  out.lambda = lambda;
  out.psi_plugin = psi_plugin(cal_scores, out.mu_hat, lambda);
  out.psi_bar = bootstrap_psi_bar(cal_scores, out.mu_hat, lambda, boot.B, boot.alpha_boot, boot.seed);
  out.n = cal_scores.size();
  out.alpha_boot = boot.alpha_boot;
  out.bootstrap_B = boot.B;
  out.seed = boot.seed;
  if (boot.B >= kDominanceCheckMinB && out.psi_bar < out.psi_plugin - 1e-12) {
    throw std::logic_error("bootstrap upper bound fell below the plug-in log-MGF");
  }
  out.validate();
  return out;
}

GrowthRateEstimate estimate_gamma(double mu_hat, const std::function<double(double)>& psi_of,
                                  double post_shift_mean, std::span<const double> lambda_grid) {
  require(!lambda_grid.empty(), "lambda grid must be nonempty");
  GrowthRateEstimate out;
  out.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  out.gamma = -std::numeric_limits<double>::infinity();
  bool any_finite = false;
  for (double lambda : lambda_grid) {
    require_lambda(lambda);
    const double value = lambda * (post_shift_mean - mu_hat) - psi_of(lambda);
    if (!std::isfinite(value)) continue;
    if (!any_finite || value > out.gamma || (value == out.gamma && lambda < out.lambda_star)) {
      out.gamma = value;
      out.lambda_star = lambda;
      any_finite = true;
    }
  }
  if (!any_finite) throw InvalidInput("growth objective is non-finite on the whole grid");
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  return grid;
}

double select_lambda(std::span<const double> cal_scores, double hypothesized_shift,
                     std::span<const double> grid) {
  const double mu = fit_mu_hat(cal_scores);
  auto psi = [&](double lambda) { return psi_plugin(cal_scores, mu, lambda); };
  return estimate_gamma(mu, psi, mu + hypothesized_shift, grid).lambda_star;
}

}  // namespace driftguard
