#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace driftguard {

/// Null-score statistics fitted on a held-out calibration set.
struct CalibrationSummary {
  double mu_hat = 0.0;
  double lambda = 0.5;
  double psi_plugin = 0.0;
  double psi_bar = 0.0;
  std::uint64_t n = 0;
  double alpha_boot = 0.05;
  std::uint64_t bootstrap_B = 1000;
  std::uint64_t seed = 0;

  // Checks field ranges; throws InvalidInput.
  void validate() const;
};

struct BootstrapOptions {
  std::uint64_t B = 1000;
  double alpha_boot = 0.05;
  std::uint64_t seed = 0;
};

inline constexpr double kDefaultLambda = 0.5;
// Below this many resamples psi_bar >= psi_plugin is not enforced.
inline constexpr std::uint64_t kDominanceCheckMinB = 200;

double fit_mu_hat(std::span<const double> cal_scores);

/// ln[(1/n) sum_j exp(lambda (S_j - mu_hat))], evaluated with log-sum-exp.
double psi_plugin(std::span<const double> cal_scores, double mu_hat, double lambda);

/// ln of the type-1 empirical (1 - alpha_boot)-quantile of the resampled
/// m(lambda) values. Resample b draws from its own counter-seeded stream, so
/// the result is bit-reproducible for a given seed.
double bootstrap_psi_bar(std::span<const double> cal_scores, double mu_hat, double lambda,
                         std::uint64_t B, double alpha_boot, std::uint64_t seed);

/// All B resampled ln m^{(b)}(lambda) values, in resample-index order.
std::vector<double> bootstrap_log_mgf_samples(std::span<const double> cal_scores, double mu_hat,
                                              double lambda, std::uint64_t B, std::uint64_t seed);

/// Lowest order statistic whose empirical CDF reaches `level` (sorts a copy).
double type1_quantile(std::vector<double> values, double level);

/// Fits every field of CalibrationSummary. Requires at least two scores.
CalibrationSummary fit_calibration(std::span<const double> cal_scores, double lambda,
                                   const BootstrapOptions& boot = {});

struct GrowthRateEstimate {
  double gamma = 0.0;
  double lambda_star = 0.0;
  std::vector<double> lambda_grid;
};

/// Grid maximum of lambda (post_shift_mean - mu_hat) - psi_of(lambda).
/// Ties resolve to the smallest lambda, so the result does not depend on grid order.
GrowthRateEstimate estimate_gamma(double mu_hat, const std::function<double(double)>& psi_of,
                                  double post_shift_mean, std::span<const double> lambda_grid);

/// {0.1, 0.2, ..., 2.0}.
std::vector<double> default_lambda_grid();

/// Picks the lambda in `grid` maximizing the growth objective for a
/// hypothesized post-shift mean increase, using the plug-in log-MGF.
double select_lambda(std::span<const double> cal_scores, double hypothesized_shift,
                     std::span<const double> grid);

/// Closed-form log-MGF of a centered Gaussian with standard deviation sigma.
inline double gaussian_log_mgf(double lambda, double sigma = 1.0) {
  return 0.5 * lambda * lambda * sigma * sigma;
}

}  // namespace driftguard
