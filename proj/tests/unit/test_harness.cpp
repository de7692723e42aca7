#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "driftguard/harness.hpp"
#include "driftguard/serialization.hpp"

using namespace driftguard;

namespace {

ExperimentConfig pipeline_config(std::size_t runs, std::size_t length) {
  ExperimentConfig cfg = ExperimentConfig::make_default();
  cfg.stream.length = length;
  cfg.stream.change_point = length / 2;
  Vector delta = Vector::Zero(cfg.stream.dim);
  delta[0] = 2.0;
  cfg.stream.shift = MeanTranslate{delta};
  cfg.n_runs = runs;
  cfg.calibration_size = 200;
  cfg.training_size = 500;
  cfg.detector.B = 200;
  cfg.master_seed = 77;
  return cfg;
}

ExperimentConfig gaussian_config(std::size_t runs, std::size_t length, double shift, double lambda) {
  ExperimentConfig cfg = ExperimentConfig::make_default();
  cfg.score_source = ScoreSource::kGaussian;
  cfg.detector.psi_mode = PsiMode::kExact;
  cfg.detector.lambda = lambda;
  cfg.gaussian.shift = shift;
  cfg.stream.length = length;
  cfg.stream.change_point = 0;
  cfg.n_runs = runs;
  cfg.master_seed = 78;
  return cfg;
}

// Records the order in which samples are requested.
class RecordingSource final : public SampleSource {
 public:
  explicit RecordingSource(StreamConfig cfg) : inner_(std::move(cfg)) {}
  std::optional<LabeledSample> next() override {
    auto s = inner_.next();
    if (s) requested.push_back(inner_.position());
    return s;
  }
  std::size_t position() const override { return inner_.position(); }
  std::vector<std::size_t> requested;

 private:
  GeneratedSource inner_;
};

}  // namespace

TEST_CASE("run_single pulls each sample once, in order") {
  const auto cfg = pipeline_config(1, 300);
  RecordingSource src(prepare_run(cfg, 0).stream);
  const RunRecord rec = run_single(cfg, 0, &src);
  CHECK_FALSE(rec.aborted);
  REQUIRE(src.requested.size() == 300);
  for (std::size_t i = 0; i < 300; ++i) CHECK(src.requested[i] == i + 1);
}

TEST_CASE("decisions are causal: truncating the stream keeps every earlier step") {
  auto cfg = pipeline_config(1, 400);
  cfg.adapter.enabled = true;
  cfg.detector.tau = 5.0;
  const RunRecord full = run_single(cfg, 0, nullptr, {true});
  auto short_cfg = cfg;
  short_cfg.stream.length = 250;
  const RunRecord part = run_single(short_cfg, 0, nullptr, {true});
  REQUIRE(part.trajectory.size() == 250);
  for (std::size_t i = 0; i < 250; ++i) {
    CHECK(part.trajectory[i].score == full.trajectory[i].score);
    CHECK(part.trajectory[i].log_m == full.trajectory[i].log_m);
    CHECK(part.trajectory[i].alarm == full.trajectory[i].alarm);
  }
}

TEST_CASE("without adaptation the run equals a standalone replay of its scores") {
  const auto cfg = pipeline_config(1, 600);
  const RunSetup setup = prepare_run(cfg, 0);
  const auto scored = generate_score_stream(setup.stream, *setup.params, *setup.stats, cfg.score);
  EProcess e(setup.null_model, cfg.detector.tau, cfg.detector.reset_policy);
  for (const auto& s : scored) e.update(s.score);
  CHECK(run_single(cfg, 0).alarms == e.alarm_times());
  CHECK(run_scores(cfg, setup).size() == scored.size());
}

TEST_CASE("experiments are independent of the worker count") {
  const auto cfg = pipeline_config(6, 300);
  setenv("DRIFTGUARD_THREADS", "1", 1);
  const Json one = to_json(run_mfisher(cfg).detection);
  setenv("DRIFTGUARD_THREADS", "3", 1);
  const Json three = to_json(run_mfisher(cfg).detection);
  unsetenv("DRIFTGUARD_THREADS");
  CHECK(one.dump() == three.dump());
}

TEST_CASE("doubling the growth rate halves the delay") {
  const auto slow_cfg = gaussian_config(300, 2000, 1.0, 1.0);
  const auto fast_cfg = gaussian_config(300, 2000, std::sqrt(2.0), std::sqrt(2.0));
  CHECK(expected_gamma(slow_cfg) == doctest::Approx(0.5));
  CHECK(expected_gamma(fast_cfg) == doctest::Approx(1.0));
  const std::vector<double> taus = {1e4};
  const SweepReport slow = delay_scaling_sweep(slow_cfg, taus);
  const SweepReport fast = delay_scaling_sweep(fast_cfg, taus);
  REQUIRE(slow.points[0].mean_delay.has_value());
  REQUIRE(fast.points[0].mean_delay.has_value());
  const double ratio = *fast.points[0].mean_delay / *slow.points[0].mean_delay;
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
}

TEST_CASE("mean delay is nondecreasing in the threshold") {
  const auto cfg = gaussian_config(100, 1000, 1.0, 1.0);
  const SweepReport sweep = delay_scaling_sweep(cfg, {2.0, 10.0, 100.0, 1000.0});
  for (std::size_t i = 1; i < sweep.points.size(); ++i)
    CHECK(*sweep.points[i].mean_delay >= *sweep.points[i - 1].mean_delay);
  CHECK(sweep.slope > 0.0);
}

TEST_CASE("audit starts at one") {
  auto cfg = gaussian_config(200, 50, 0.0, 0.5);
  cfg.stream.change_point.reset();
  cfg.audit_checkpoints = {0, 10, 50};
  const AuditRecord audit = supermartingale_audit(cfg);
  REQUIRE(audit.checkpoints.size() == 3);
  CHECK(audit.checkpoints[0].mean == 1.0);
  CHECK(audit.checkpoints[0].std_error == 0.0);
  CHECK(audit.all_pass);
  cfg.audit_checkpoints = {60};
  CHECK_THROWS_AS(supermartingale_audit(cfg), InvalidInput);
}

TEST_CASE("a broken run is reported, not thrown") {
  auto cfg = pipeline_config(2, 100);
  cfg.calibration_size = 10;
  cfg.detector.B = 1;
  cfg.stream.class_means[0][0] = 1e300;
  const RunRecord rec = run_single(cfg, 0);
  CHECK(rec.aborted);
  CHECK_FALSE(rec.error.empty());
  CHECK(rec.alarms.empty());
}

TEST_CASE("assertions compare observed values with their bounds") {
  ExperimentConfig cfg = ExperimentConfig::make_default();
  cfg.assertions.max_far = 0.05;
  cfg.assertions.audit_must_pass = true;
  ExperimentOutcome out;
  out.detection.empirical_far = 0.1;
  AuditRecord audit;
  audit.all_pass = true;
  const auto results = check_assertions(cfg, &out, nullptr, &audit);
  REQUIRE(results.size() == 2);
  CHECK_FALSE(results[0].pass);
  CHECK(results[1].pass);

  cfg.assertions = {};
  cfg.assertions.max_mean_delay = 5.0;
  cfg.detector.tau = 50.0;
  SweepReport sweep;
  sweep.points = {{20.0, 3.0, 1.0, 10}, {50.0, 6.0, 1.0, 10}};
  const auto delay = check_assertions(cfg, nullptr, &sweep, nullptr);
  REQUIRE(delay.size() == 1);
  CHECK(delay[0].observed == 6.0);
  CHECK_FALSE(delay[0].pass);
}
