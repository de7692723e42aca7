#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>

#include "driftguard/math.hpp"
#include "driftguard/score_engine.hpp"
#include "driftguard/toy_model.hpp"

namespace driftguard {

struct MeanTranslate {
  Vector delta;
};

struct CovarianceScale {
  double factor = 1.0;
};

// Experimental: label shift rather than covariate shift.
struct ClassPriorShift {
  Vector new_prior;
};

using Shift = std::variant<MeanTranslate, CovarianceScale, ClassPriorShift>;

std::string_view shift_name(const Shift& shift);

/// Gaussian class-conditional mixture with an optional change point.
/// Samples are indexed from 1; samples 1..change_point come from the base
/// mixture and the rest from the shifted one.
struct StreamConfig {
  std::uint64_t seed = 0;
  int dim = 8;
  int classes = 4;
  std::size_t length = 0;
  std::optional<std::size_t> change_point;
  Shift shift = MeanTranslate{};
  std::vector<Vector> class_means;
  Matrix class_cov;
  Vector prior;

  /// C Gaussians with means 2 e_c in d dimensions, identity covariance,
  /// uniform prior, no change point.
  static StreamConfig make_default(std::uint64_t seed, std::size_t length, int dim = 8,
                                   int classes = 4);

  void validate() const;
};

/// Counter-based sampler: sample t depends only on (seed, t) and the config.
class StreamGenerator {
 public:
  explicit StreamGenerator(StreamConfig cfg);

  LabeledSample sample(std::size_t t) const;
  bool is_shifted(std::size_t t) const noexcept;
  const StreamConfig& config() const noexcept { return cfg_; }

 private:
  StreamConfig cfg_;
  Matrix chol_;  // lower factor of class_cov
  Vector base_cdf_;
  Vector shifted_cdf_;
};

std::vector<LabeledSample> generate(const StreamConfig& cfg);

/// Multi-shift streams: generates each segment from its own config and
/// concatenates them. Segment k starts at global index 1 + sum of earlier
/// lengths; give segments distinct seeds.
std::vector<LabeledSample> generate_chained(std::span<const StreamConfig> segments);

struct ScoredSample {
  std::size_t t = 0;
  double score = 0.0;
};

/// Clipped score of every generated sample under fixed parameters.
std::vector<ScoredSample> generate_score_stream(const StreamConfig& cfg, const PromptParams& params,
                                                const FeatureStats& stats, const ScoreConfig& score_cfg);

/// Pull-based access to a stream, one sample at a time in order.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::optional<LabeledSample> next() = 0;
  // Index of the last sample handed out (0 before the first call).
  virtual std::size_t position() const = 0;
};

class GeneratedSource final : public SampleSource {
 public:
  explicit GeneratedSource(StreamConfig cfg) : gen_(std::move(cfg)) {}

  std::optional<LabeledSample> next() override;
  std::size_t position() const override { return t_; }

 private:
  StreamGenerator gen_;
  std::size_t t_ = 0;
};

}  // namespace driftguard
