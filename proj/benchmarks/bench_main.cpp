#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "driftguard/calibration.hpp"
#include "driftguard/eprocess.hpp"
#include "driftguard/fisher_adapt.hpp"
#include "driftguard/harness.hpp"
#include "driftguard/score_engine.hpp"
#include "driftguard/stream_sim.hpp"

namespace {

using namespace driftguard;

std::vector<double> normal_scores(std::size_t n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& s : out) s = dist(gen);
  return out;
}

void BM_Nonconformity(benchmark::State& state) {
  const auto d = static_cast<int>(state.range(0));
  const StreamConfig cfg = StreamConfig::make_default(3, 256, d, 4);
  const auto samples = generate(cfg);
  std::vector<Vector> feats;
  for (const auto& s : samples) feats.push_back(s.feature);
  const FeatureStats stats = FeatureStats::estimate(feats);
  const PromptParams params = PromptParams::from_class_means(class_means(samples, 4));
  const ScoreConfig score_cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    const Vector& x = feats[i++ % feats.size()];
    benchmark::DoNotOptimize(nonconformity(predict(params, x), x, stats, score_cfg));
  }
}
BENCHMARK(BM_Nonconformity)->Arg(8)->Arg(64)->Arg(256);

// One full calibration fit; B resamples of n scores each.
void BM_Bootstrap(benchmark::State& state) {
  const auto scores = normal_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_calibration(scores, 0.5, {1000, 0.05, 7}));
  }
  state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(BM_Bootstrap)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_EProcessUpdate(benchmark::State& state) {
  const auto scores = normal_scores(4096);
  // Null scores drift downward, so alarms stay rare and the alarm log stays small.
  EProcess e(NullModel{0.0, 0.5, 0.125}, 100.0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.update(scores[i++ & 4095]));
  }
}
BENCHMARK(BM_EProcessUpdate);

void BM_FisherDiag(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StreamConfig cfg = StreamConfig::make_default(5, n);
  const auto samples = generate(cfg);
  std::vector<Vector> feats;
  for (const auto& s : samples) feats.push_back(s.feature);
  const PromptParams params = PromptParams::from_class_means(class_means(samples, 4));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_fisher_diag(params, feats));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FisherDiag)->Arg(64)->Arg(2000);

void BM_SoftEce(benchmark::State& state) {
  const StreamConfig cfg = StreamConfig::make_default(6, static_cast<std::size_t>(state.range(0)));
  const auto samples = generate(cfg);
  const PromptParams params = PromptParams::from_class_means(class_means(samples, 4));
  for (auto _ : state) benchmark::DoNotOptimize(cmp_penalty(params, samples, {}));
}
BENCHMARK(BM_SoftEce)->Arg(64)->Arg(512);

// Whole detection runs on Gaussian scores with the exact log-MGF.
void BM_NullRuns(benchmark::State& state) {
  ExperimentConfig cfg = ExperimentConfig::make_default();
  cfg.score_source = ScoreSource::kGaussian;
  cfg.detector.psi_mode = PsiMode::kExact;
  cfg.stream.length = 1000;
  cfg.n_runs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_mfisher(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_NullRuns)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
