#pragma once

#include <optional>
#include <span>
#include <vector>

#include "driftguard/math.hpp"
#include "driftguard/score_engine.hpp"

namespace driftguard {

/// Learnable C x d weight matrix of a linear-softmax head over frozen
/// features. The shape is fixed at construction.
class PromptParams {
 public:
  explicit PromptParams(Matrix weights);

  static PromptParams zeros(Eigen::Index classes, Eigen::Index dim);
  /// Row c is the mean feature of class c.
  static PromptParams from_class_means(std::span<const Vector> class_means);

  const Matrix& weights() const noexcept { return weights_; }
  Eigen::Index classes() const noexcept { return weights_.rows(); }
  Eigen::Index dim() const noexcept { return weights_.cols(); }

  // Same-shape, finite replacement only.
  void set_weights(const Matrix& weights);

 private:
  Matrix weights_;
};

struct LabeledSample {
  Vector feature;
  int label = 0;
};

Vector logits(const PromptParams& params, const Vector& feature);

ProbabilityVector predict(const PromptParams& params, const Vector& feature);

/// d/dP ln p(y|x) = (onehot(y) - p) x^T.
Matrix grad_log_prob(const PromptParams& params, const LabeledSample& sample);

/// d/dP of the confidence term of the score, plus an optional extra logit
/// gradient routed through the same input. The Mahalanobis term does not
/// depend on P.
Matrix grad_loss(const PromptParams& params, const Vector& feature,
                 const std::optional<Vector>& cmp_grad_logits = std::nullopt);

/// Empirical class means of labeled samples; classes with no samples get zeros.
std::vector<Vector> class_means(std::span<const LabeledSample> samples, int classes);

}  // namespace driftguard
