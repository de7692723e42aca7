#include "driftguard/stream_sim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "driftguard/rng.hpp"

namespace driftguard {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_prior(const Vector& prior, int classes, const char* what) {
  require(prior.size() == classes, std::string(what) + " has wrong length");
  // Reuses the probability-vector invariants.
  (void)ProbabilityVector(prior);
}

Vector cumulative(const Vector& prior) {
  Vector cdf(prior.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < prior.size(); ++i) {
    acc += prior[i];
    cdf[i] = acc;
  }
  cdf[cdf.size() - 1] = 1.0;
  return cdf;
}

int draw_label(const Vector& cdf, double u) {
  for (Eigen::Index i = 0; i < cdf.size(); ++i) {
    if (u < cdf[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cdf.size() - 1);
}

}  // namespace

std::string_view shift_name(const Shift& shift) {
  return std::visit(Overloaded{
                        [](const MeanTranslate&) { return std::string_view("mean_translate"); },
                        [](const CovarianceScale&) { return std::string_view("covariance_scale"); },
                        [](const ClassPriorShift&) { return std::string_view("class_prior_shift"); },
                    },
                    shift);
}

StreamConfig StreamConfig::make_default(std::uint64_t seed, std::size_t length, int dim, int classes) {
  require(dim >= classes, "default class means need dim >= classes");
  StreamConfig cfg;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.classes = classes;
  cfg.length = length;
  for (int c = 0; c < classes; ++c) {
    Vector mean = Vector::Zero(dim);
    mean[c] = 2.0;
    cfg.class_means.push_back(std::move(mean));
  }
  cfg.class_cov = Matrix::Identity(dim, dim);
  cfg.prior = Vector::Constant(classes, 1.0 / classes);
  cfg.shift = MeanTranslate{Vector::Zero(dim)};
  return cfg;
}

void StreamConfig::validate() const {
  require(dim >= 1 && classes >= 2, "stream needs dim >= 1 and at least two classes");
  require(class_means.size() == static_cast<std::size_t>(classes), "one mean per class required");
  for (const auto& m : class_means) {
    require(m.size() == dim && m.allFinite(), "class means must be finite with length dim");
  }
  require(class_cov.rows() == dim && class_cov.cols() == dim, "class covariance shape mismatch");
  require(class_cov.allFinite(), "class covariance must be finite");
  require((class_cov - class_cov.transpose()).cwiseAbs().maxCoeff() <= 1e-9,
          "class covariance must be symmetric");
  Eigen::LLT<Matrix> llt(class_cov);
  require(llt.info() == Eigen::Success, "class covariance must be positive definite");
  validate_prior(prior, classes, "prior");
  if (change_point) require(*change_point < length, "change point must precede the stream end");
  std::visit(Overloaded{
                 [&](const MeanTranslate& s) {
                   require(s.delta.size() == dim && s.delta.allFinite(), "mean shift must have length dim");
                 },
                 [&](const CovarianceScale& s) {
                   require(std::isfinite(s.factor) && s.factor > 0.0, "covariance factor must be positive");
                 },
                 [&](const ClassPriorShift& s) { validate_prior(s.new_prior, classes, "shifted prior"); },
             },
             shift);
}

StreamGenerator::StreamGenerator(StreamConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  chol_ = Eigen::LLT<Matrix>(cfg_.class_cov).matrixL();
  base_cdf_ = cumulative(cfg_.prior);
  shifted_cdf_ = base_cdf_;
  if (const auto* s = std::get_if<ClassPriorShift>(&cfg_.shift)) shifted_cdf_ = cumulative(s->new_prior);
}

bool StreamGenerator::is_shifted(std::size_t t) const noexcept {
  return cfg_.change_point.has_value() && t > *cfg_.change_point;
}

LabeledSample StreamGenerator::sample(std::size_t t) const {
  require(t >= 1, "stream indices start at 1");
  SplitMix64 engine = make_engine(cfg_.seed, StreamTag::kSample, t);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Identical draws before and after the change point; the shift only
  // changes how they are mapped to a sample.
  const double u = unit(engine);
  Vector z(cfg_.dim);
  for (int j = 0; j < cfg_.dim; ++j) z[j] = normal(engine);

  const bool shifted = is_shifted(t);
  LabeledSample out;
  out.label = draw_label(shifted ? shifted_cdf_ : base_cdf_, u);
  Vector noise = chol_ * z;
  if (shifted) {
    if (const auto* s = std::get_if<CovarianceScale>(&cfg_.shift)) noise *= std::sqrt(s->factor);
  }
  out.feature = cfg_.class_means[static_cast<std::size_t>(out.label)] + noise;
  if (shifted) {
    if (const auto* s = std::get_if<MeanTranslate>(&cfg_.shift)) out.feature += s->delta;
  }
  return out;
}

std::vector<LabeledSample> generate(const StreamConfig& cfg) {
  const StreamGenerator gen(cfg);
  std::vector<LabeledSample> out;
  out.reserve(cfg.length);
  for (std::size_t t = 1; t <= cfg.length; ++t) out.push_back(gen.sample(t));
  return out;
}

std::vector<LabeledSample> generate_chained(std::span<const StreamConfig> segments) {
  std::vector<LabeledSample> out;
  for (const auto& segment : segments) {
    auto part = generate(segment);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<ScoredSample> generate_score_stream(const StreamConfig& cfg, const PromptParams& params,
                                                const FeatureStats& stats, const ScoreConfig& score_cfg) {
  score_cfg.validate();
  const StreamGenerator gen(cfg);
  std::vector<ScoredSample> out;
  out.reserve(cfg.length);
  for (std::size_t t = 1; t <= cfg.length; ++t) {
    const LabeledSample s = gen.sample(t);
    const double raw = nonconformity(predict(params, s.feature), s.feature, stats, score_cfg);
    out.push_back({t, clip_score(raw, score_cfg)});
  }
  return out;
}

std::optional<LabeledSample> GeneratedSource::next() {
  if (t_ >= gen_.config().length) return std::nullopt;
  ++t_;
  return gen_.sample(t_);
}

}  // namespace driftguard
