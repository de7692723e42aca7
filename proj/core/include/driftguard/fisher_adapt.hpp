#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "driftguard/math.hpp"
#include "driftguard/score_engine.hpp"
#include "driftguard/toy_model.hpp"

namespace driftguard {

inline constexpr double kDefaultFisherDamping = 1e-4;
inline constexpr double kDefaultStepSize = 5e-5;
inline constexpr double kStepSizeGrid[] = {1e-5, 5e-5, 1e-4};

/// Damped diagonal Fisher estimate over the prompt weights. The
/// preconditioner applied to a gradient entry is 1 / (diag + gamma_damp).
struct FisherDiag {
  Matrix diag;
  double gamma_damp = kDefaultFisherDamping;
  std::uint64_t n_samples = 0;

  void validate() const;
};

enum class FisherLabelMode {
  // Exact expectation over y ~ p(y|x); needs no labels.
  kModelExpectation,
  // Squared gradient at the observed label.
  kEmpirical,
};

std::string_view to_string(FisherLabelMode mode);
FisherLabelMode fisher_label_mode_from_string(std::string_view name);

/// Model-expectation diagonal: mean over samples of p_c (1 - p_c) x_j^2.
FisherDiag estimate_fisher_diag(const PromptParams& params, std::span<const Vector> features,
                                double gamma_damp = kDefaultFisherDamping);

FisherDiag estimate_fisher_diag(const PromptParams& params, std::span<const LabeledSample> samples,
                                double gamma_damp, FisherLabelMode mode);

/// grad / (diag + gamma), elementwise.
Matrix natural_gradient(const Matrix& grad, const FisherDiag& fisher);

/// P - eta * natural_gradient(grad, fisher).
PromptParams natural_grad_step(const PromptParams& params, const Matrix& grad,
                               const FisherDiag& fisher, double eta);

struct EceConfig {
  int n_bins = 15;
  // Inverse temperature of the soft bin edges and soft argmax, per bin width.
  double sharpness = 100.0;

  void validate() const;
};

struct Prediction {
  ProbabilityVector probs;
  int label = 0;
};

/// Equal-width, right-closed binning of max-probability confidence.
double ece_hard(std::span<const Prediction> predictions, int n_bins);

struct LogitSample {
  Vector logits;
  int label = 0;
};

struct SoftEce {
  double value = 0.0;
  std::vector<Vector> grad_logits;  // one per input, same order
};

/// Differentiable calibration error.
///
/// With kappa = sharpness * n_bins, p = softmax(z) and q = softmax(kappa z), each
/// sample gets a soft confidence c = sum_k q_k p_k and a soft correctness a = q_y. Bin membership
/// is a product of logistic edges sigma(kappa (c - lo)) sigma(kappa (hi - c)) with the
/// outermost edges open, normalized over bins. The value is
///   (1/N) sum_b | sum_i w_ib (a_i - c_i) |.
/// Replacing w, a and c by their hard counterparts gives ece_hard exactly, so
/// the value converges to ece_hard as the sharpness grows.
SoftEce ece_soft(std::span<const LogitSample> samples, const EceConfig& cfg);

/// Value and P-gradient of the soft ECE over a labeled buffer.
struct CmpTerm {
  double value = 0.0;
  Matrix grad;
};
CmpTerm cmp_penalty(const PromptParams& params, std::span<const LabeledSample> buffer,
                    const EceConfig& cfg);

/// One preconditioned step on S_t (at `feature`) plus, when a buffer is
/// given, the soft-ECE penalty over that buffer.
PromptParams adapt(const PromptParams& params, const Vector& feature, const FisherDiag& fisher,
                   double eta, std::optional<std::span<const LabeledSample>> cmp_buffer,
                   const EceConfig& cfg);

}  // namespace driftguard
