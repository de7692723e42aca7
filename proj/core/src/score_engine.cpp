#include "driftguard/score_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace driftguard {

ProbabilityVector::ProbabilityVector(Vector values) : values_(std::move(values)) {
  require(values_.size() >= 1, "probability vector must be nonempty");
  require(values_.allFinite(), "probability vector has non-finite entries");
  require((values_.array() >= 0.0).all(), "probability vector has negative entries");
  const double total = values_.sum();
  require(std::abs(total - 1.0) <= kSumTolerance,
          "probability vector sums to " + std::to_string(total) + ", expected 1");
}

ProbabilityVector ProbabilityVector::uniform(Eigen::Index classes) {
  require(classes >= 1, "class count must be positive");
  return ProbabilityVector(Vector::Constant(classes, 1.0 / static_cast<double>(classes)));
}

ProbabilityVector ProbabilityVector::one_hot(Eigen::Index classes, Eigen::Index hot) {
  require(hot >= 0 && hot < classes, "one-hot index out of range");
  Vector v = Vector::Zero(classes);
  v[hot] = 1.0;
  return ProbabilityVector(std::move(v));
}

Eigen::Index ProbabilityVector::argmax() const {
  Eigen::Index idx = 0;
  values_.maxCoeff(&idx);
  return idx;
}

FeatureStats::FeatureStats(Vector mean, Matrix covariance_inverse)
    : mean_(std::move(mean)), covariance_inverse_(std::move(covariance_inverse)) {
  const auto d = mean_.size();
  require(d >= 1, "feature dimension must be positive");
  require(covariance_inverse_.rows() == d && covariance_inverse_.cols() == d,
          "inverse covariance shape does not match mean dimension");
  require(mean_.allFinite() && covariance_inverse_.allFinite(), "feature stats must be finite");
  const double asym = (covariance_inverse_ - covariance_inverse_.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-9, "inverse covariance is not symmetric");
  Eigen::LLT<Matrix> llt(covariance_inverse_);
  require(llt.info() == Eigen::Success, "inverse covariance is not positive definite");
}

FeatureStats FeatureStats::estimate(std::span<const Vector> features, double ridge) {
  if (features.size() < 2) throw InsufficientData("need at least two feature vectors");
  require(ridge >= 0.0, "ridge must be nonnegative");
  const auto d = features.front().size();
  Vector mean = Vector::Zero(d);
  for (const auto& f : features) {
    require(f.size() == d, "feature dimension mismatch");
    mean += f;
  }
  mean /= static_cast<double>(features.size());

  Matrix cov = Matrix::Zero(d, d);
  for (const auto& f : features) {
    const Vector c = f - mean;
    cov.noalias() += c * c.transpose();
  }
  cov /= static_cast<double>(features.size() - 1);
  cov.diagonal().array() += ridge;

  Eigen::LLT<Matrix> llt(cov);
  require(llt.info() == Eigen::Success, "feature covariance is singular");
  Matrix inv = llt.solve(Matrix::Identity(d, d));
  inv = 0.5 * (inv + inv.transpose());
  return FeatureStats(std::move(mean), std::move(inv));
}

void ScoreConfig::validate() const {
  require(std::isfinite(alpha_score) && alpha_score >= 0.0, "alpha_score must be >= 0");
  require(!std::isnan(score_cap) && score_cap > 0.0, "score_cap must be positive");
}

double kl_to_uniform(const ProbabilityVector& p) {
  const auto classes = p.size();
  require(classes >= 2, "KL to uniform needs at least two classes");
  const double log_c = std::log(static_cast<double>(classes));
  double kl = 0.0;
  for (Eigen::Index i = 0; i < classes; ++i) {
    const double pi = p[i];
    if (pi > 0.0) kl += pi * (std::log(pi) + log_c);
  }
  // Rounding can push the sum a hair outside [0, ln C].
  return std::clamp(kl, 0.0, log_c);
}

double mahalanobis_sq(const Vector& x, const FeatureStats& stats) {
  require(x.size() == stats.dim(), "feature dimension mismatch in Mahalanobis distance");
  const Vector diff = x - stats.mean();
  const double q = diff.dot(stats.covariance_inverse() * diff);
  return std::max(q, 0.0);
}

double nonconformity(const ProbabilityVector& p, const Vector& x, const FeatureStats& stats,
                     const ScoreConfig& cfg) {
  cfg.validate();
  return kl_to_uniform(p) + cfg.alpha_score * mahalanobis_sq(x, stats);
}

double clip_score(double score, const ScoreConfig& cfg) { return std::min(score, cfg.score_cap); }

Vector nonconformity_grad_logits(const Vector& logits) {
  require(logits.size() >= 2, "need at least two logits");
  require(logits.allFinite(), "logits must be finite");
  const Vector log_p = log_softmax(logits);
  const Vector p = log_p.array().exp();
  const double neg_entropy = p.dot(log_p);
  Vector g = p.array() * (log_p.array() - neg_entropy);
  // The exact gradient is orthogonal to the ones vector; drop rounding drift.
  g.array() -= g.mean();
  return g;
}

}  // namespace driftguard
