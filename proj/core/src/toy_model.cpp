#include "driftguard/toy_model.hpp"

namespace driftguard {

namespace {

void check_feature(const PromptParams& params, const Vector& feature) {
  require(feature.size() == params.dim(), "feature dimension does not match parameters");
  require(feature.allFinite(), "feature must be finite");
}

}  // namespace

PromptParams::PromptParams(Matrix weights) : weights_(std::move(weights)) {
  require(weights_.rows() >= 2, "need at least two classes");
  require(weights_.cols() >= 1, "need at least one feature dimension");
  require(weights_.allFinite(), "prompt weights must be finite");
}

PromptParams PromptParams::zeros(Eigen::Index classes, Eigen::Index dim) {
  return PromptParams(Matrix::Zero(classes, dim));
}

PromptParams PromptParams::from_class_means(std::span<const Vector> class_means) {
  require(!class_means.empty(), "no class means supplied");
  const auto d = class_means.front().size();
  Matrix w(static_cast<Eigen::Index>(class_means.size()), d);
  for (std::size_t c = 0; c < class_means.size(); ++c) {
    require(class_means[c].size() == d, "class means differ in dimension");
    w.row(static_cast<Eigen::Index>(c)) = class_means[c].transpose();
  }
  return PromptParams(std::move(w));
}

void PromptParams::set_weights(const Matrix& weights) {
  require(weights.rows() == weights_.rows() && weights.cols() == weights_.cols(),
          "prompt weight shape is immutable");
  require(weights.allFinite(), "prompt weights must be finite");
  weights_ = weights;
}

Vector logits(const PromptParams& params, const Vector& feature) {
  check_feature(params, feature);
  return params.weights() * feature;
}

ProbabilityVector predict(const PromptParams& params, const Vector& feature) {
  Vector p = softmax(logits(params, feature));
  // Renormalize so rounding never trips the sum-to-one check.
  p /= p.sum();
  return ProbabilityVector(std::move(p));
}

Matrix grad_log_prob(const PromptParams& params, const LabeledSample& sample) {
  require(sample.label >= 0 && sample.label < params.classes(), "label out of range");
  Vector residual = -predict(params, sample.feature).values();
  residual[sample.label] += 1.0;
  return residual * sample.feature.transpose();
}

Matrix grad_loss(const PromptParams& params, const Vector& feature,
                 const std::optional<Vector>& cmp_grad_logits) {
  Vector g = nonconformity_grad_logits(logits(params, feature));
  if (cmp_grad_logits) {
    require(cmp_grad_logits->size() == params.classes(), "CMP logit gradient has wrong size");
    require(cmp_grad_logits->allFinite(), "CMP logit gradient must be finite");
    g += *cmp_grad_logits;
  }
  return g * feature.transpose();
}

std::vector<Vector> class_means(std::span<const LabeledSample> samples, int classes) {
  require(classes >= 1, "class count must be positive");
  require(!samples.empty(), "no samples");
  const auto d = samples.front().feature.size();
  std::vector<Vector> sums(static_cast<std::size_t>(classes), Vector::Zero(d));
  std::vector<double> counts(static_cast<std::size_t>(classes), 0.0);
  for (const auto& s : samples) {
    require(s.label >= 0 && s.label < classes, "label out of range");
    require(s.feature.size() == d, "feature dimension mismatch");
    sums[static_cast<std::size_t>(s.label)] += s.feature;
    counts[static_cast<std::size_t>(s.label)] += 1.0;
  }
  for (std::size_t c = 0; c < sums.size(); ++c) {
    if (counts[c] > 0.0) sums[c] /= counts[c];
  }
  return sums;
}

}  // namespace driftguard
