#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "driftguard/calibration.hpp"
#include "driftguard/eprocess.hpp"
#include "driftguard/fisher_adapt.hpp"
#include "driftguard/score_engine.hpp"
#include "driftguard/stream_sim.hpp"
#include "driftguard/toy_model.hpp"

namespace driftguard {

// Where the per-sample scores come from.
enum class ScoreSource {
  // Features -> toy model -> nonconformity score.
  kPipeline,
  // Scores drawn directly from N(null_mean, null_sd^2), shifted by
  // `shift` after the change point. Supports the exact log-MGF.
  kGaussian,
};

enum class PsiMode {
  kBootstrap,  // psi_bar from the calibration bootstrap
  kPlugin,     // plug-in psi_hat
  kExact,      // closed-form Gaussian log-MGF (Gaussian source only)
};

enum class FisherSource {
  kTrain,   // fitted once on the training features
  kWindow,  // refit on the last `window` stream features at each alarm
};

std::string_view to_string(ScoreSource v);
std::string_view to_string(PsiMode v);
std::string_view to_string(FisherSource v);
ScoreSource score_source_from_string(std::string_view s);
PsiMode psi_mode_from_string(std::string_view s);
FisherSource fisher_source_from_string(std::string_view s);

struct GaussianScoreConfig {
  double null_mean = 0.0;
  double null_sd = 1.0;
  double shift = 1.0;
};

struct DetectorConfig {
  double tau = 100.0;
  double lambda = kDefaultLambda;
  double alpha_boot = 0.05;
  std::uint64_t B = 1000;
  ResetPolicy reset_policy = ResetPolicy::kResetOnAlarm;
  PsiMode psi_mode = PsiMode::kBootstrap;
  // Subtracted from the log-MGF; a positive value breaks the supermartingale
  // property on purpose (negative control).
  double psi_undercut = 0.0;
};

struct AdapterConfig {
  bool enabled = false;
  double eta = kDefaultStepSize;
  double gamma_damp = kDefaultFisherDamping;
  EceConfig ece;
  FisherSource fisher_source = FisherSource::kTrain;
  std::size_t window = 64;
  bool use_cmp = true;
  std::size_t cmp_buffer_size = 64;
};

/// Bounds checked after an experiment; absent fields are not checked.
struct Assertions {
  std::optional<double> max_far;
  std::optional<double> min_mean_delay;
  std::optional<double> max_mean_delay;
  std::optional<double> min_adapt_win_fraction;
  std::optional<bool> audit_must_pass;
};

struct ExperimentConfig {
  StreamConfig stream;
  ScoreConfig score;
  DetectorConfig detector;
  AdapterConfig adapter;
  ScoreSource score_source = ScoreSource::kPipeline;
  GaussianScoreConfig gaussian;
  std::size_t n_runs = 200;
  std::size_t calibration_size = 500;
  std::size_t training_size = 2000;
  std::uint64_t master_seed = 0;
  std::vector<double> tau_grid = {20.0, 50.0, 100.0, 200.0, 500.0};
  std::vector<std::size_t> audit_checkpoints = {0, 1, 5, 10, 25, 50};
  Assertions assertions;

  /// Default toy-model experiment: 1000-sample stream, no change point.
  static ExperimentConfig make_default();

  void validate() const;
};

/// Everything fitted before a run's stream starts.
struct RunSetup {
  std::uint64_t run_seed = 0;
  StreamConfig stream;
  NullModel null_model;
  CalibrationSummary calibration;
  // Pipeline source only.
  std::optional<PromptParams> params;
  std::optional<FeatureStats> stats;
  std::optional<FisherDiag> train_fisher;
  std::vector<LabeledSample> cmp_buffer;
};

RunSetup prepare_run(const ExperimentConfig& cfg, std::size_t run_index);

/// Scores of one run's stream with parameters held fixed (no adaptation).
std::vector<double> run_scores(const ExperimentConfig& cfg, const RunSetup& setup);

struct TrajectoryPoint {
  std::size_t t = 0;
  double score = 0.0;
  double log_m = 0.0;
  bool alarm = false;
};

struct RunRecord {
  std::size_t run = 0;
  std::vector<std::uint64_t> alarms;
  std::optional<std::uint64_t> delay;
  bool falsely_alarmed = false;
  bool aborted = false;
  std::string error;
  std::size_t n_adapt_steps = 0;
  // lambda (post-change mean - mu_hat) - log_mgf, with parameters held fixed.
  std::optional<double> growth_rate;
  // Segment metrics; absent when the segment is empty or the source has no labels.
  std::optional<double> acc_pre, acc_post_adapt, acc_post_no_adapt;
  std::optional<double> ece_pre, ece_post_adapt, ece_post_no_adapt;
  std::vector<TrajectoryPoint> trajectory;
};

struct RunOptions {
  bool record_trajectory = false;
};

/// One pass of the detect-then-adapt loop. Samples are pulled one at a time
/// from `source`; when null, the run's own generated stream is used.
RunRecord run_single(const ExperimentConfig& cfg, std::size_t run_index,
                     SampleSource* source = nullptr, const RunOptions& options = {});

struct DetectionReport {
  std::vector<RunRecord> runs;
  double empirical_far = 0.0;
  std::optional<double> mean_delay;
  std::optional<double> delay_std;
  std::size_t n_detected = 0;
  std::size_t n_aborted = 0;
  double gamma_hat = 0.0;
  std::optional<double> predicted_delay;  // ln tau / gamma_hat when gamma_hat > 0
  double far_bound = 0.0;                 // alpha_boot + 1/tau (1/tau for exact psi)
};

struct AdaptationReport {
  std::optional<double> acc_pre, acc_post_no_adapt, acc_post_adapt;
  std::optional<double> ece_pre, ece_post_no_adapt, ece_post_adapt;
  double n_adapt_steps = 0.0;       // mean over runs
  double adapt_win_fraction = 0.0;  // runs with acc_post_adapt > acc_post_no_adapt
};

struct ExperimentOutcome {
  DetectionReport detection;
  AdaptationReport adaptation;
};

ExperimentOutcome run_mfisher(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Growth rate of the configured detector at its own lambda.
double expected_gamma(const ExperimentConfig& cfg);

struct SweepPoint {
  double tau = 0.0;
  std::optional<double> mean_delay;
  std::optional<double> delay_std;
  std::size_t n_detected = 0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  double slope = 0.0;  // least squares of mean delay on ln tau
  double intercept = 0.0;
  double gamma_hat = 0.0;
};

/// Detection only; every run's score stream is reused across thresholds.
SweepReport delay_scaling_sweep(const ExperimentConfig& cfg, const std::vector<double>& tau_grid);

struct AuditCheckpoint {
  std::size_t t = 0;
  double mean = 1.0;
  double std_error = 0.0;
  bool pass = true;
};

struct AuditRecord {
  std::vector<AuditCheckpoint> checkpoints;
  std::size_t n_streams = 0;
  bool all_pass = true;
};

/// Mean of M_t over runs at each checkpoint, flagged when above 1 + 3 SE.
AuditRecord supermartingale_audit(const ExperimentConfig& cfg);

struct AssertionResult {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = true;
};

/// Checks cfg.assertions. Sweep delays are read at the detector threshold when
/// it is on the grid, otherwise at the first grid point.
std::vector<AssertionResult> check_assertions(const ExperimentConfig& cfg, const ExperimentOutcome* outcome,
                                              const SweepReport* sweep, const AuditRecord* audit);

/// `run,t,score,log_m,alarm` rows for every run that recorded a trajectory.
void write_trajectories_csv(std::ostream& out, const std::vector<RunRecord>& runs);

}  // namespace driftguard
