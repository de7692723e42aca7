#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "driftguard/calibration.hpp"
#include "driftguard/math.hpp"

using namespace driftguard;

namespace {

std::vector<double> zeros_and_ones(int each) {
  std::vector<double> out;
  for (int i = 0; i < each; ++i) {
    out.push_back(0.0);
    out.push_back(1.0);
  }
  return out;
}

}  // namespace

TEST_CASE("mu_hat is the sample mean") {
  const std::vector<double> s = {0.2, 0.4, 0.9};
  CHECK(fit_mu_hat(s) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fit_mu_hat(std::vector<double>{1.0}), InsufficientData);
  CHECK_THROWS_AS(fit_mu_hat(std::vector<double>{1.0, NAN}), InvalidInput);
}

TEST_CASE("plug-in log-MGF reference value") {
  const auto s = zeros_and_ones(5);
  CHECK(psi_plugin(s, 0.5, 1.0) == doctest::Approx(0.120114).epsilon(1e-5));
  CHECK(psi_plugin(s, 0.5, 1.0) == doctest::Approx(std::log(std::cosh(0.5))).epsilon(1e-12));
  CHECK_THROWS_AS(psi_plugin(s, 0.5, 0.0), InvalidInput);
}

TEST_CASE("plug-in log-MGF survives extreme exponents") {
  const std::vector<double> s = {0.0, 50.0, 50.0, 0.0};
  const double v = psi_plugin(s, 25.0, 40.0);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1000.0 - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("plug-in log-MGF is nonnegative and convex in lambda") {
  std::mt19937_64 gen(5);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> s(200);
  for (double& x : s) x = e(gen);
  const double mu = fit_mu_hat(s);
  double prev2 = psi_plugin(s, mu, 0.05), prev1 = psi_plugin(s, mu, 0.10);
  for (int k = 3; k <= 40; ++k) {
    const double cur = psi_plugin(s, mu, 0.05 * k);
    CHECK(cur >= 0.0);
    CHECK(cur - 2.0 * prev1 + prev2 >= -1e-12);
    prev2 = prev1;
    prev1 = cur;
  }
}

TEST_CASE("bootstrap of constant scores is zero") {
  const std::vector<double> s(20, 3.0);
  CHECK(bootstrap_psi_bar(s, 3.0, 0.5, 100, 0.05, 1) == 0.0);
}

TEST_CASE("single resample bootstrap returns that resample") {
  const auto s = zeros_and_ones(10);
  const auto samples = bootstrap_log_mgf_samples(s, 0.5, 1.0, 1, 17);
  REQUIRE(samples.size() == 1);
  CHECK(bootstrap_psi_bar(s, 0.5, 1.0, 1, 0.05, 17) == samples[0]);
}

TEST_CASE("bootstrap resamples match a direct recomputation") {
  const std::vector<double> s = {0.1, 0.7, 2.0, 0.3, 1.5};
  const auto samples = bootstrap_log_mgf_samples(s, 0.9, 0.5, 50, 3);
  for (double v : samples) {
    // Each value is ln of a mean of exp(lambda (s_j - mu)) over five draws with replacement.
    bool found = false;
    for (int a = 0; a < 5 && !found; ++a)
      for (int b = 0; b < 5 && !found; ++b)
        for (int c = 0; c < 5 && !found; ++c)
          for (int d = 0; d < 5 && !found; ++d)
            for (int f = 0; f < 5 && !found; ++f) {
              double m = 0.0;
              for (int idx : {a, b, c, d, f}) m += std::exp(0.5 * (s[idx] - 0.9));
              found = std::fabs(std::log(m / 5.0) - v) <= 1e-12;
            }
    CHECK(found);
  }
}

TEST_CASE("bootstrap upper bound dominates the plug-in value across seeds") {
  const auto s = zeros_and_ones(5);
  int above = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (bootstrap_psi_bar(s, 0.5, 1.0, 1000, 0.05, seed) >= 0.120114) ++above;
  }
  CHECK(above >= 94);
}

TEST_CASE("bootstrap quantile is monotone in its level") {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> s(100);
  for (double& x : s) x = n(gen);
  const double mu = fit_mu_hat(s);
  double prev = -1e300;
  for (double alpha : {0.4, 0.2, 0.1, 0.05, 0.01}) {
    const double v = bootstrap_psi_bar(s, mu, 0.5, 500, alpha, 9);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("bootstrap is bit reproducible") {
  std::vector<double> s(60);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(0.37 * static_cast<double>(i * i));
  CHECK(bootstrap_psi_bar(s, 0.5, 0.7, 300, 0.05, 42) == bootstrap_psi_bar(s, 0.5, 0.7, 300, 0.05, 42));
  CHECK(bootstrap_psi_bar(s, 0.5, 0.7, 300, 0.05, 42) != bootstrap_psi_bar(s, 0.5, 0.7, 300, 0.05, 43));
}

TEST_CASE("type-1 quantile picks an order statistic") {
  const std::vector<double> v = {5, 1, 4, 2, 3};
  CHECK(type1_quantile(v, 0.2) == 1);
  CHECK(type1_quantile(v, 0.21) == 2);
  CHECK(type1_quantile(v, 0.95) == 5);
  CHECK(type1_quantile(v, 1.0) == 5);
  CHECK_THROWS_AS(type1_quantile({}, 0.5), InvalidInput);
}

TEST_CASE("fit_calibration fills every field") {
  const auto s = zeros_and_ones(50);
  const CalibrationSummary cal = fit_calibration(s, 1.0, {500, 0.05, 8});
  CHECK(cal.mu_hat == doctest::Approx(0.5));
  CHECK(cal.n == 100);
  CHECK(cal.psi_bar >= cal.psi_plugin);
  CHECK(cal.bootstrap_B == 500);
  CHECK(cal.seed == 8);
  CHECK_THROWS_AS(fit_calibration(s, 1.0, {500, 0.6, 8}), InvalidInput);
}

TEST_CASE("growth rate of a Gaussian mean shift") {
  std::vector<double> grid;
  for (int i = 1; i <= 400; ++i) grid.push_back(0.01 * i);
  auto psi = [](double l) { return gaussian_log_mgf(l); };

  const auto one = estimate_gamma(0.0, psi, 1.0, grid);
  CHECK(one.gamma == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(one.lambda_star == doctest::Approx(1.0));

  const auto two = estimate_gamma(0.0, psi, 2.0, grid);
  CHECK(two.gamma == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(two.lambda_star == doctest::Approx(2.0));

  std::vector<double> shuffled = grid;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(7));
  const auto again = estimate_gamma(0.0, psi, 2.0, shuffled);
  CHECK(again.gamma == two.gamma);
  CHECK(again.lambda_star == two.lambda_star);
}

TEST_CASE("lambda selection stays on the grid") {
  const auto s = zeros_and_ones(50);
  const auto grid = default_lambda_grid();
  const double l = select_lambda(s, 1.0, grid);
  CHECK(std::find(grid.begin(), grid.end(), l) != grid.end());
}
