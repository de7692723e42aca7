#include <doctest.h>

#include <cmath>
#include <random>

#include "driftguard/toy_model.hpp"
#include "oracles.hpp"

using namespace driftguard;

namespace {

Matrix random_matrix(std::mt19937_64& gen, int rows, int cols, double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = n(gen);
  return m;
}

Vector one(double v) { return Vector::Constant(1, v); }

}  // namespace

TEST_CASE("predict reference value") {
  Matrix w(2, 1);
  w << 1, 0;
  const ProbabilityVector p = predict(PromptParams(w), one(1.0));
  CHECK(p[0] == doctest::Approx(0.731059).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(0.268941).epsilon(1e-6));
  CHECK(predict(PromptParams::zeros(3, 2), Vector::Ones(2))[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("parameters reject bad shapes and values") {
  CHECK_THROWS_AS(PromptParams(Matrix::Zero(1, 3)), InvalidInput);
  CHECK_THROWS_AS(PromptParams(Matrix::Zero(2, 0)), InvalidInput);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = NAN;
  CHECK_THROWS_AS(PromptParams{bad}, InvalidInput);
  PromptParams p = PromptParams::zeros(2, 2);
  CHECK_THROWS_AS(p.set_weights(Matrix::Zero(3, 2)), InvalidInput);
  CHECK_THROWS_AS(predict(p, Vector::Zero(3)), InvalidInput);
}

TEST_CASE("predict is invariant to a common logit shift") {
  std::mt19937_64 gen(21);
  const Matrix w = random_matrix(gen, 4, 3);
  Vector x(3);
  x << 0.5, -1.0, 2.0;
  // Adding a constant row vector r to every row shifts all logits by r.x.
  Matrix shifted = w;
  Vector r(3);
  r << 3.0, -2.0, 1.0;
  for (int c = 0; c < 4; ++c) shifted.row(c) += r.transpose();
  const Vector a = predict(PromptParams(w), x).values();
  const Vector b = predict(PromptParams(shifted), x).values();
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("predict stays finite for huge logits") {
  Matrix w(3, 1);
  w << 1000, -1000, 999;
  const ProbabilityVector p = predict(PromptParams(w), one(1.0));
  CHECK(all_finite(p.values()));
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
  CHECK(p[1] <= 1e-300);
}

TEST_CASE("log-probability gradient reference and finite differences") {
  const Matrix g = grad_log_prob(PromptParams::zeros(2, 1), {one(1.0), 0});
  CHECK(g(0, 0) == doctest::Approx(0.5));
  CHECK(g(1, 0) == doctest::Approx(-0.5));

  std::mt19937_64 gen(22);
  for (int k = 0; k < 50; ++k) {
    const int C = 2 + k % 5, d = 1 + k % 4;
    const Matrix w = random_matrix(gen, C, d);
    const Vector x = random_matrix(gen, d, 1);
    const int y = k % C;
    const Matrix analytic = grad_log_prob(PromptParams(w), {x, y});
    const Matrix fd =
        oracle::central_difference(w, [&](const Matrix& m) { return oracle::log_prob(m, x, y); }, 1e-5);
    CHECK(oracle::relative_error(analytic, fd) <= 1e-5);
  }
}

TEST_CASE("score function has zero mean under the model") {
  std::mt19937_64 gen(23);
  for (int k = 0; k < 20; ++k) {
    const Matrix w = random_matrix(gen, 5, 3);
    const Vector x = random_matrix(gen, 3, 1);
    const PromptParams params(w);
    const ProbabilityVector p = predict(params, x);
    Matrix expect = Matrix::Zero(5, 3);
    for (int y = 0; y < 5; ++y) expect += p[y] * grad_log_prob(params, {x, y});
    CHECK(expect.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("loss gradient matches finite differences of the confidence term") {
  std::mt19937_64 gen(24);
  for (int k = 0; k < 50; ++k) {
    const Matrix w = random_matrix(gen, 4, 3);
    const Vector x = random_matrix(gen, 3, 1);
    const Matrix analytic = grad_loss(PromptParams(w), x);
    const Matrix fd = oracle::central_difference(
        w, [&](const Matrix& m) { return oracle::kl_to_uniform(oracle::logits(m, x)); }, 1e-5);
    CHECK(oracle::relative_error(analytic, fd) <= 1e-5);
  }
}

TEST_CASE("extra logit gradient is routed through the input") {
  const PromptParams params = PromptParams::zeros(3, 2);
  Vector x(2);
  x << 1.0, -2.0;
  Vector extra(3);
  extra << 1.0, 0.0, -1.0;
  const Matrix base = grad_loss(params, x);
  const Matrix with = grad_loss(params, x, extra);
  CHECK(((with - base) - extra * x.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("class means and the matching initialisation") {
  std::vector<LabeledSample> samples;
  samples.push_back({one(1.0), 0});
  samples.push_back({one(3.0), 0});
  samples.push_back({one(-2.0), 2});
  const auto means = class_means(samples, 3);
  REQUIRE(means.size() == 3);
  CHECK(means[0][0] == 2.0);
  CHECK(means[1][0] == 0.0);
  CHECK(means[2][0] == -2.0);
  const PromptParams p = PromptParams::from_class_means(means);
  CHECK(p.classes() == 3);
  CHECK(p.weights()(2, 0) == -2.0);
}
