#pragma once

#include <span>

#include <Eigen/Cholesky>

#include "driftguard/math.hpp"

namespace driftguard {

/// A categorical distribution over C classes. Construction validates that the
/// entries are nonnegative and sum to one within 1e-9.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit ProbabilityVector(Vector values);

  static ProbabilityVector uniform(Eigen::Index classes);
  static ProbabilityVector one_hot(Eigen::Index classes, Eigen::Index hot);

  const Vector& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  Eigen::Index argmax() const;
  double max() const { return values_.maxCoeff(); }

 private:
  Vector values_;
};

/// Training-feature mean and inverse covariance for the Mahalanobis term.
class FeatureStats {
 public:
  static constexpr double kDefaultRidge = 1e-6;

  // Rejects a non-symmetric or non-positive-definite inverse covariance.
  FeatureStats(Vector mean, Matrix covariance_inverse);

  /// Sample mean and covariance (plus ridge * I) of the rows, then inverted.
  static FeatureStats estimate(std::span<const Vector> features, double ridge = kDefaultRidge);

  const Vector& mean() const noexcept { return mean_; }
  const Matrix& covariance_inverse() const noexcept { return covariance_inverse_; }
  Eigen::Index dim() const noexcept { return mean_.size(); }

 private:
  Vector mean_;
  Matrix covariance_inverse_;
};

struct ScoreConfig {
  double alpha_score = 0.5;
  // Scores above this cap are clipped before they reach the detector.
  double score_cap = 50.0;

  void validate() const;
};

/// sum_i p_i ln(p_i C) = ln C - H(p), with 0 ln 0 = 0.
double kl_to_uniform(const ProbabilityVector& p);

/// (x - mean)^T Sigma^{-1} (x - mean).
double mahalanobis_sq(const Vector& x, const FeatureStats& stats);

/// Confidence deviation plus alpha_score times the Mahalanobis term. Not clipped.
double nonconformity(const ProbabilityVector& p, const Vector& x, const FeatureStats& stats,
                     const ScoreConfig& cfg);

/// min(score, cfg.score_cap).
double clip_score(double score, const ScoreConfig& cfg);

/// Gradient of kl_to_uniform(softmax(logits)) with respect to the logits:
/// p_k (ln p_k - sum_i p_i ln p_i). Entries sum to zero.
Vector nonconformity_grad_logits(const Vector& logits);

}  // namespace driftguard
