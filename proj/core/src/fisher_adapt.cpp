#include "driftguard/fisher_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace driftguard {

void FisherDiag::validate() const {
  require(diag.size() > 0, "Fisher diagonal is empty");
  require(diag.allFinite() && (diag.array() >= 0.0).all(), "Fisher diagonal must be finite and >= 0");
  require(std::isfinite(gamma_damp) && gamma_damp > 0.0, "damping must be positive");
}

std::string_view to_string(FisherLabelMode mode) {
  return mode == FisherLabelMode::kModelExpectation ? "model_expectation" : "empirical";
}

FisherLabelMode fisher_label_mode_from_string(std::string_view name) {
  if (name == "model_expectation") return FisherLabelMode::kModelExpectation;
  if (name == "empirical") return FisherLabelMode::kEmpirical;
  throw InvalidInput("unknown Fisher label mode '" + std::string(name) + "'");
}

FisherDiag estimate_fisher_diag(const PromptParams& params, std::span<const Vector> features,
                                double gamma_damp) {
  require(!features.empty(), "Fisher estimate needs at least one sample");
  require(std::isfinite(gamma_damp) && gamma_damp > 0.0, "damping must be positive");
  Matrix acc = Matrix::Zero(params.classes(), params.dim());
  for (const auto& x : features) {
    const Vector p = predict(params, x).values();
    // E_y[(1[y=c] - p_c)^2] = p_c (1 - p_c)
    const Vector var = p.array() * (1.0 - p.array());
    const Vector x2 = x.array().square();
    acc.noalias() += var * x2.transpose();
  }
  acc /= static_cast<double>(features.size());
  return FisherDiag{std::move(acc), gamma_damp, features.size()};
}

FisherDiag estimate_fisher_diag(const PromptParams& params, std::span<const LabeledSample> samples,
                                double gamma_damp, FisherLabelMode mode) {
  require(!samples.empty(), "Fisher estimate needs at least one sample");
  if (mode == FisherLabelMode::kModelExpectation) {
    std::vector<Vector> features;
    features.reserve(samples.size());
    for (const auto& s : samples) features.push_back(s.feature);
    return estimate_fisher_diag(params, features, gamma_damp);
  }
  require(std::isfinite(gamma_damp) && gamma_damp > 0.0, "damping must be positive");
  Matrix acc = Matrix::Zero(params.classes(), params.dim());
  for (const auto& s : samples) acc += grad_log_prob(params, s).array().square().matrix();
  acc /= static_cast<double>(samples.size());
  return FisherDiag{std::move(acc), gamma_damp, samples.size()};
}

Matrix natural_gradient(const Matrix& grad, const FisherDiag& fisher) {
  fisher.validate();
  require(grad.rows() == fisher.diag.rows() && grad.cols() == fisher.diag.cols(),
          "gradient and Fisher shapes differ");
  require(grad.allFinite(), "gradient must be finite");
  return grad.array() / (fisher.diag.array() + fisher.gamma_damp);
}

PromptParams natural_grad_step(const PromptParams& params, const Matrix& grad,
                               const FisherDiag& fisher, double eta) {
  require(std::isfinite(eta) && eta > 0.0, "step size must be positive");
  require(grad.rows() == params.classes() && grad.cols() == params.dim(),
          "gradient shape does not match parameters");
  return PromptParams(params.weights() - eta * natural_gradient(grad, fisher));
}

void EceConfig::validate() const {
  require(n_bins >= 1, "n_bins must be >= 1");
  require(std::isfinite(sharpness) && sharpness > 0.0, "sharpness must be positive and finite");
}

double ece_hard(std::span<const Prediction> predictions, int n_bins) {
  require(!predictions.empty(), "ECE of an empty prediction set");
  require(n_bins >= 1, "n_bins must be >= 1");
  std::vector<double> gap(static_cast<std::size_t>(n_bins), 0.0);
  for (const auto& pred : predictions) {
    const double conf = pred.probs.max();
    // Right-closed bins: (b/n, (b+1)/n], with zero folded into the first bin.
    int bin = static_cast<int>(std::ceil(conf * n_bins)) - 1;
    bin = std::clamp(bin, 0, n_bins - 1);
    const double correct = pred.probs.argmax() == pred.label ? 1.0 : 0.0;
    gap[static_cast<std::size_t>(bin)] += correct - conf;
  }
  double total = 0.0;
  for (double g : gap) total += std::abs(g);
  return total / static_cast<double>(predictions.size());
}

namespace {

// Sharpness counts per bin width: edges blur over 1 / (sharpness n_bins) of
// confidence and the soft argmax over the same width in logits.
double soft_temperature(const EceConfig& cfg) { return cfg.sharpness * cfg.n_bins; }

struct SoftSample {
  Vector p;
  Vector q;
  Vector membership;  // normalized over bins
  Vector dmembership_dc;  // unnormalized derivative of each m_b
  double mass = 0.0;  // sum of unnormalized memberships
  double gap = 0.0;   // a - c
};

SoftSample soft_forward(const LogitSample& sample, const EceConfig& cfg) {
  const auto classes = sample.logits.size();
  require(classes >= 2, "need at least two classes");
  require(sample.logits.allFinite(), "logits must be finite");
  require(sample.label >= 0 && sample.label < classes, "label out of range");

  SoftSample out;
  out.p = softmax(sample.logits);
  const double kappa = soft_temperature(cfg);
  out.q = softmax(kappa * sample.logits);
  const double a = out.q[sample.label];
  const double c = out.q.dot(out.p);
  out.gap = a - c;

  const int bins = cfg.n_bins;
  const double s = kappa;
  out.membership.resize(bins);
  out.dmembership_dc.resize(bins);
  for (int b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / bins;
    const double hi = static_cast<double>(b + 1) / bins;
    const double sig_lo = b == 0 ? 1.0 : sigmoid(s * (c - lo));
    const double sig_hi = b == bins - 1 ? 1.0 : sigmoid(s * (hi - c));
    const double m = sig_lo * sig_hi;
    const double dlog = (b == 0 ? 0.0 : s * (1.0 - sig_lo)) - (b == bins - 1 ? 0.0 : s * (1.0 - sig_hi));
    out.membership[b] = m;
    out.dmembership_dc[b] = m * dlog;
  }
  out.mass = out.membership.sum();
  out.membership /= out.mass;
  return out;
}

}  // namespace

SoftEce ece_soft(std::span<const LogitSample> samples, const EceConfig& cfg) {
  require(!samples.empty(), "soft ECE of an empty set");
  cfg.validate();
  const auto n = static_cast<double>(samples.size());
  const int bins = cfg.n_bins;

  std::vector<SoftSample> fwd;
  fwd.reserve(samples.size());
  Vector bin_gap = Vector::Zero(bins);
  for (const auto& sample : samples) {
    fwd.push_back(soft_forward(sample, cfg));
    bin_gap += fwd.back().gap * fwd.back().membership;
  }

  SoftEce out;
  out.value = bin_gap.cwiseAbs().sum() / n;

  const Vector beta = bin_gap.unaryExpr([n](double g) {
    return g > 0.0 ? 1.0 / n : (g < 0.0 ? -1.0 / n : 0.0);
  });

  out.grad_logits.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SoftSample& f = fwd[i];
    const int y = samples[i].label;

    const double gap_bar = beta.dot(f.membership);
    // d value / d m_b through the normalization w_b = m_b / mass.
    const Vector m_bar = f.gap * (beta.array() - gap_bar) / f.mass;
    const double c_bar = m_bar.dot(f.dmembership_dc) - gap_bar;
    const double a_bar = gap_bar;

    Vector q_bar = c_bar * f.p;
    q_bar[y] += a_bar;
    const Vector p_bar = c_bar * f.q;

    Vector z_bar = f.p.array() * (p_bar.array() - f.p.dot(p_bar));
    z_bar.array() += soft_temperature(cfg) * f.q.array() * (q_bar.array() - f.q.dot(q_bar));
    out.grad_logits.push_back(std::move(z_bar));
  }
  return out;
}

CmpTerm cmp_penalty(const PromptParams& params, std::span<const LabeledSample> buffer,
                    const EceConfig& cfg) {
  require(!buffer.empty(), "CMP buffer is empty");
  std::vector<LogitSample> logit_sets;
  logit_sets.reserve(buffer.size());
  for (const auto& s : buffer) logit_sets.push_back({logits(params, s.feature), s.label});
  const SoftEce soft = ece_soft(logit_sets, cfg);

  CmpTerm out{soft.value, Matrix::Zero(params.classes(), params.dim())};
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    out.grad.noalias() += soft.grad_logits[i] * buffer[i].feature.transpose();
  }
  return out;
}

PromptParams adapt(const PromptParams& params, const Vector& feature, const FisherDiag& fisher,
                   double eta, std::optional<std::span<const LabeledSample>> cmp_buffer,
                   const EceConfig& cfg) {
  Matrix grad = grad_loss(params, feature);
  if (cmp_buffer && !cmp_buffer->empty()) grad += cmp_penalty(params, *cmp_buffer, cfg).grad;
  return natural_grad_step(params, grad, fisher, eta);
}

}  // namespace driftguard
