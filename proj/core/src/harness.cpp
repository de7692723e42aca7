#include "driftguard/harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include "driftguard/parallel.hpp"
#include "driftguard/rng.hpp"

namespace driftguard {

std::string_view to_string(ScoreSource v) {
  return v == ScoreSource::kPipeline ? "pipeline" : "gaussian";
}

std::string_view to_string(PsiMode v) {
  switch (v) {
    case PsiMode::kBootstrap:
      return "bootstrap";
    case PsiMode::kPlugin:
      return "plugin";
    case PsiMode::kExact:
      return "exact";
  }
  return "unknown";
}

std::string_view to_string(FisherSource v) { return v == FisherSource::kTrain ? "train" : "window"; }

ScoreSource score_source_from_string(std::string_view s) {
  if (s == "pipeline") return ScoreSource::kPipeline;
  if (s == "gaussian") return ScoreSource::kGaussian;
  throw InvalidInput("unknown score source '" + std::string(s) + "'");
}

PsiMode psi_mode_from_string(std::string_view s) {
  if (s == "bootstrap") return PsiMode::kBootstrap;
  if (s == "plugin") return PsiMode::kPlugin;
  if (s == "exact") return PsiMode::kExact;
  throw InvalidInput("unknown psi mode '" + std::string(s) + "'");
}

FisherSource fisher_source_from_string(std::string_view s) {
  if (s == "train") return FisherSource::kTrain;
  if (s == "window") return FisherSource::kWindow;
  throw InvalidInput("unknown Fisher source '" + std::string(s) + "'");
}

ExperimentConfig ExperimentConfig::make_default() {
  ExperimentConfig cfg;
  cfg.stream = StreamConfig::make_default(0, 1000);
  return cfg;
}

void ExperimentConfig::validate() const {
  stream.validate();
  score.validate();
  require(n_runs >= 1, "n_runs must be >= 1");
  require(calibration_size >= 10, "calibration_size must be >= 10");
  require(!std::isnan(detector.tau) && detector.tau > 1.0, "tau must exceed 1");
  require(std::isfinite(detector.lambda) && detector.lambda > 0.0, "lambda must be positive");
  require(detector.alpha_boot > 0.0 && detector.alpha_boot < 0.5, "alpha_boot must lie in (0, 0.5)");
  require(detector.B >= 1, "B must be >= 1");
  require(std::isfinite(detector.psi_undercut), "psi_undercut must be finite");
  require(std::isfinite(adapter.eta) && adapter.eta > 0.0, "eta must be positive");
  require(std::isfinite(adapter.gamma_damp) && adapter.gamma_damp > 0.0, "gamma_damp must be positive");
  adapter.ece.validate();
  require(adapter.window >= 1, "Fisher window must be >= 1");
  if (score_source == ScoreSource::kGaussian) {
    require(std::isfinite(gaussian.null_sd) && gaussian.null_sd > 0.0, "null_sd must be positive");
    require(std::isfinite(gaussian.null_mean) && std::isfinite(gaussian.shift),
            "Gaussian score parameters must be finite");
  } else {
    require(detector.psi_mode != PsiMode::kExact, "exact psi needs the gaussian score source");
    require(training_size >= static_cast<std::size_t>(std::max(2, stream.classes)),
            "training_size too small");
  }
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    require(tau_grid[i] > 1.0, "tau grid values must exceed 1");
    if (i > 0) require(tau_grid[i] > tau_grid[i - 1], "tau grid must be increasing");
  }
}

namespace {

std::vector<LabeledSample> null_samples(const StreamConfig& base, std::uint64_t seed, std::size_t n) {
  StreamConfig cfg = base;
  cfg.seed = seed;
  cfg.length = n;
  cfg.change_point.reset();
  return generate(cfg);
}

double gaussian_score(const ExperimentConfig& cfg, std::uint64_t seed, StreamTag tag, std::size_t index,
                      bool shifted) {
  SplitMix64 engine = make_engine(seed, tag, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double z = normal(engine);
  return cfg.gaussian.null_mean + cfg.gaussian.null_sd * z + (shifted ? cfg.gaussian.shift : 0.0);
}

bool is_post_change(const StreamConfig& s, std::size_t t) {
  return s.change_point.has_value() && t > *s.change_point;
}

double pipeline_score(const FeatureStats& stats, const ScoreConfig& score, const Vector& x,
                      const ProbabilityVector& p) {
  return clip_score(nonconformity(p, x, stats, score), score);
}

double growth_rate(const NullModel& null_model, double post_mean) {
  const double lambda[] = {null_model.lambda};
  return estimate_gamma(null_model.mu_hat, [&](double) { return null_model.log_mgf; }, post_mean, lambda)
      .gamma;
}

void classify_alarms(const StreamConfig& stream, RunRecord& rec) {
  if (!stream.change_point) {
    rec.falsely_alarmed = !rec.alarms.empty();
    return;
  }
  const auto nu = static_cast<std::uint64_t>(*stream.change_point);
  for (std::uint64_t t : rec.alarms) {
    if (t <= nu) {
      rec.falsely_alarmed = true;
      return;
    }
    rec.delay = t - nu;
    return;
  }
}

std::optional<double> accuracy(const std::vector<Prediction>& preds) {
  if (preds.empty()) return std::nullopt;
  double hits = 0.0;
  for (const auto& p : preds) hits += p.probs.argmax() == p.label ? 1.0 : 0.0;
  return hits / static_cast<double>(preds.size());
}

std::optional<double> ece_of(const std::vector<Prediction>& preds, int bins) {
  if (preds.empty()) return std::nullopt;
  return ece_hard(preds, bins);
}

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> std;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  out.mean = mean;
  out.std = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return out;
}

std::optional<double> mean_of(const std::vector<RunRecord>& runs,
                              std::optional<double> RunRecord::*field) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& r : runs) {
    if (r.aborted || !(r.*field)) continue;
    total += *(r.*field);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return total / static_cast<double>(count);
}

}  // namespace

RunSetup prepare_run(const ExperimentConfig& cfg, std::size_t run_index) {
  cfg.validate();
  RunSetup setup;
  setup.run_seed = derive_seed(cfg.master_seed, StreamTag::kRun, run_index);
  setup.stream = cfg.stream;
  setup.stream.seed = derive_seed(setup.run_seed, StreamTag::kSample, 0);
  const std::uint64_t boot_seed = derive_seed(setup.run_seed, StreamTag::kBootstrap, 0);
  const std::uint64_t cal_seed = derive_seed(setup.run_seed, StreamTag::kCalibration, 0);
  const auto& det = cfg.detector;

  if (det.psi_mode == PsiMode::kExact) {
    const double psi = gaussian_log_mgf(det.lambda, cfg.gaussian.null_sd);
    setup.calibration = CalibrationSummary{cfg.gaussian.null_mean, det.lambda, psi, psi,
                                           cfg.calibration_size, det.alpha_boot, det.B, boot_seed};
  } else {
    std::vector<double> cal_scores;
    cal_scores.reserve(cfg.calibration_size);
    if (cfg.score_source == ScoreSource::kGaussian) {
      for (std::size_t j = 0; j < cfg.calibration_size; ++j) {
        cal_scores.push_back(gaussian_score(cfg, cal_seed, StreamTag::kCalibration, j, false));
      }
    } else {
      const auto train =
          null_samples(cfg.stream, derive_seed(setup.run_seed, StreamTag::kTraining, 0), cfg.training_size);
      std::vector<Vector> features;
      features.reserve(train.size());
      for (const auto& s : train) features.push_back(s.feature);
      setup.stats = FeatureStats::estimate(features);
      const auto means = class_means(train, cfg.stream.classes);
      setup.params = PromptParams::from_class_means(means);
      setup.train_fisher = estimate_fisher_diag(*setup.params, features, cfg.adapter.gamma_damp);

      const auto cal = null_samples(cfg.stream, cal_seed, cfg.calibration_size);
      for (const auto& s : cal) {
        cal_scores.push_back(
            pipeline_score(*setup.stats, cfg.score, s.feature, predict(*setup.params, s.feature)));
      }
      const std::size_t keep = std::min(cfg.adapter.cmp_buffer_size, cal.size());
      setup.cmp_buffer.assign(cal.end() - static_cast<std::ptrdiff_t>(keep), cal.end());
    }
    setup.calibration = fit_calibration(cal_scores, det.lambda, {det.B, det.alpha_boot, boot_seed});
  }

  setup.null_model = NullModel::from_calibration(setup.calibration);
  if (det.psi_mode == PsiMode::kPlugin) setup.null_model.log_mgf = setup.calibration.psi_plugin;
  setup.null_model.log_mgf -= det.psi_undercut;
  return setup;
}

std::vector<double> run_scores(const ExperimentConfig& cfg, const RunSetup& setup) {
  std::vector<double> scores;
  scores.reserve(setup.stream.length);
  if (cfg.score_source == ScoreSource::kGaussian) {
    for (std::size_t t = 1; t <= setup.stream.length; ++t) {
      scores.push_back(
          gaussian_score(cfg, setup.stream.seed, StreamTag::kScore, t, is_post_change(setup.stream, t)));
    }
    return scores;
  }
  for (const auto& s : generate_score_stream(setup.stream, *setup.params, *setup.stats, cfg.score)) {
    scores.push_back(s.score);
  }
  return scores;
}

RunRecord run_single(const ExperimentConfig& cfg, std::size_t run_index, SampleSource* source,
                     const RunOptions& options) {
  RunRecord rec;
  rec.run = run_index;
  try {
    const RunSetup setup = prepare_run(cfg, run_index);
    EProcess detector(setup.null_model, cfg.detector.tau, cfg.detector.reset_policy);

    auto record_step = [&](std::size_t t, double score, bool alarm) {
      if (options.record_trajectory) {
        const double log_m = alarm ? detector.alarms().back().log_m : detector.log_m();
        rec.trajectory.push_back({t, score, log_m, alarm});
      }
    };

    if (cfg.score_source == ScoreSource::kGaussian) {
      const auto scores = run_scores(cfg, setup);
      for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool alarm = detector.update(scores[i]);
        record_step(i + 1, scores[i], alarm);
      }
    } else {
      GeneratedSource own(setup.stream);
      SampleSource& src = source != nullptr ? *source : own;
      const PromptParams& base = *setup.params;
      PromptParams current = base;
      FisherDiag fisher = *setup.train_fisher;
      std::deque<Vector> window;
      std::vector<Prediction> pre, post_adapt, post_base;
      double post_base_score_sum = 0.0;
      const std::optional<std::span<const LabeledSample>> cmp =
          cfg.adapter.use_cmp && !setup.cmp_buffer.empty()
              ? std::optional<std::span<const LabeledSample>>(setup.cmp_buffer)
              : std::nullopt;

      while (auto sample = src.next()) {
        const std::size_t t = src.position();
        const Vector& x = sample->feature;
        ProbabilityVector p = predict(current, x);
        const double score = pipeline_score(*setup.stats, cfg.score, x, p);
        const bool alarm = detector.update(score);
        record_step(t, score, alarm);

        if (is_post_change(setup.stream, t)) {
          post_adapt.push_back({std::move(p), sample->label});
          ProbabilityVector p_base = predict(base, x);
          post_base_score_sum += pipeline_score(*setup.stats, cfg.score, x, p_base);
          post_base.push_back({std::move(p_base), sample->label});
        } else {
          pre.push_back({std::move(p), sample->label});
        }

        window.push_back(x);
        if (window.size() > cfg.adapter.window) window.pop_front();

        if (alarm && cfg.adapter.enabled) {
          if (cfg.adapter.fisher_source == FisherSource::kWindow) {
            const std::vector<Vector> recent(window.begin(), window.end());
            fisher = estimate_fisher_diag(current, recent, cfg.adapter.gamma_damp);
          }
          current = adapt(current, x, fisher, cfg.adapter.eta, cmp, cfg.adapter.ece);
          ++rec.n_adapt_steps;
        }
      }

      const int bins = cfg.adapter.ece.n_bins;
      rec.acc_pre = accuracy(pre);
      rec.ece_pre = ece_of(pre, bins);
      rec.acc_post_adapt = accuracy(post_adapt);
      rec.ece_post_adapt = ece_of(post_adapt, bins);
      rec.acc_post_no_adapt = accuracy(post_base);
      rec.ece_post_no_adapt = ece_of(post_base, bins);
      if (!post_base.empty()) {
        rec.growth_rate =
            growth_rate(setup.null_model, post_base_score_sum / static_cast<double>(post_base.size()));
      }
    }
    if (cfg.score_source == ScoreSource::kGaussian && setup.stream.change_point) {
      rec.growth_rate = growth_rate(setup.null_model, cfg.gaussian.null_mean + cfg.gaussian.shift);
    }

    rec.alarms = detector.alarm_times();
    classify_alarms(setup.stream, rec);
  } catch (const std::exception& e) {
    rec.aborted = true;
    rec.error = e.what();
    rec.alarms.clear();
    rec.delay.reset();
    rec.falsely_alarmed = false;
  }
  return rec;
}

double expected_gamma(const ExperimentConfig& cfg) {
  require(cfg.score_source == ScoreSource::kGaussian && cfg.detector.psi_mode == PsiMode::kExact,
          "closed-form growth rate needs Gaussian scores with exact psi");
  const double lambda[] = {cfg.detector.lambda};
  const double sd = cfg.gaussian.null_sd;
  return estimate_gamma(
             cfg.gaussian.null_mean,
             [&](double l) { return gaussian_log_mgf(l, sd) - cfg.detector.psi_undercut; },
             cfg.gaussian.null_mean + cfg.gaussian.shift, lambda)
      .gamma;
}

namespace {

// Per-run growth rate at the detector's lambda: analytic post-change mean for
// Gaussian scores, empirical post-change mean (fixed parameters) otherwise.
std::optional<double> run_growth_rate(const ExperimentConfig& cfg, const RunSetup& setup,
                                      const std::vector<double>& scores) {
  if (!setup.stream.change_point) return std::nullopt;
  if (cfg.score_source == ScoreSource::kGaussian) {
    return growth_rate(setup.null_model, cfg.gaussian.null_mean + cfg.gaussian.shift);
  }
  const std::size_t nu = *setup.stream.change_point;
  if (scores.size() <= nu) return std::nullopt;
  const double post_mean = std::accumulate(scores.begin() + static_cast<std::ptrdiff_t>(nu), scores.end(), 0.0) /
                           static_cast<double>(scores.size() - nu);
  return growth_rate(setup.null_model, post_mean);
}

double mean_growth_rate(const std::vector<std::optional<double>>& rates) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& r : rates) {
    if (!r) continue;
    total += *r;
    ++count;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace

ExperimentOutcome run_mfisher(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  ExperimentOutcome out;
  auto& det = out.detection;
  det.runs.resize(cfg.n_runs);
  parallel_for(cfg.n_runs, [&](std::size_t r) { det.runs[r] = run_single(cfg, r, nullptr, options); });
  std::vector<std::optional<double>> rates;
  for (const auto& rec : det.runs) rates.push_back(rec.aborted ? std::nullopt : rec.growth_rate);

  std::size_t valid = 0, false_alarms = 0;
  std::vector<double> delays;
  for (const auto& rec : det.runs) {
    if (rec.aborted) {
      ++det.n_aborted;
      continue;
    }
    ++valid;
    if (rec.falsely_alarmed) ++false_alarms;
    if (rec.delay) delays.push_back(static_cast<double>(*rec.delay));
  }
  det.empirical_far = valid == 0 ? 0.0 : static_cast<double>(false_alarms) / static_cast<double>(valid);
  det.n_detected = delays.size();
  const MeanStd ms = mean_std(delays);
  det.mean_delay = ms.mean;
  det.delay_std = ms.std;
  det.gamma_hat = mean_growth_rate(rates);
  if (det.gamma_hat > 0.0) det.predicted_delay = std::log(cfg.detector.tau) / det.gamma_hat;
  det.far_bound = false_alarm_budget(cfg.detector.tau,
                                     cfg.detector.psi_mode == PsiMode::kExact ? 0.0 : cfg.detector.alpha_boot);

  auto& ad = out.adaptation;
  ad.acc_pre = mean_of(det.runs, &RunRecord::acc_pre);
  ad.acc_post_adapt = mean_of(det.runs, &RunRecord::acc_post_adapt);
  ad.acc_post_no_adapt = mean_of(det.runs, &RunRecord::acc_post_no_adapt);
  ad.ece_pre = mean_of(det.runs, &RunRecord::ece_pre);
  ad.ece_post_adapt = mean_of(det.runs, &RunRecord::ece_post_adapt);
  ad.ece_post_no_adapt = mean_of(det.runs, &RunRecord::ece_post_no_adapt);
  std::size_t paired = 0, wins = 0;
  double steps = 0.0;
  for (const auto& rec : det.runs) {
    if (rec.aborted) continue;
    steps += static_cast<double>(rec.n_adapt_steps);
    if (rec.acc_post_adapt && rec.acc_post_no_adapt) {
      ++paired;
      if (*rec.acc_post_adapt > *rec.acc_post_no_adapt) ++wins;
    }
  }
  ad.n_adapt_steps = valid == 0 ? 0.0 : steps / static_cast<double>(valid);
  ad.adapt_win_fraction = paired == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(paired);
  return out;
}

SweepReport delay_scaling_sweep(const ExperimentConfig& cfg, const std::vector<double>& tau_grid) {
  cfg.validate();
  require(!tau_grid.empty(), "tau grid must be nonempty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    require(tau_grid[i] > 1.0, "tau grid values must exceed 1");
    if (i > 0) require(tau_grid[i] > tau_grid[i - 1], "tau grid must be increasing");
  }

  const std::size_t n_tau = tau_grid.size();
  std::vector<std::vector<std::optional<double>>> delays(cfg.n_runs,
                                                         std::vector<std::optional<double>>(n_tau));
  std::vector<std::optional<double>> rates(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](std::size_t r) {
    const RunSetup setup = prepare_run(cfg, r);
    const auto scores = run_scores(cfg, setup);
    rates[r] = run_growth_rate(cfg, setup, scores);
    for (std::size_t k = 0; k < n_tau; ++k) {
      EProcess detector(setup.null_model, tau_grid[k], cfg.detector.reset_policy);
      RunRecord rec;
      for (double s : scores) {
        if (detector.update(s)) break;  // only the first alarm matters here
      }
      rec.alarms = detector.alarm_times();
      classify_alarms(setup.stream, rec);
      if (rec.delay) delays[r][k] = static_cast<double>(*rec.delay);
    }
  });

  SweepReport out;
  out.gamma_hat = mean_growth_rate(rates);
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < n_tau; ++k) {
    std::vector<double> d;
    for (std::size_t r = 0; r < cfg.n_runs; ++r) {
      if (delays[r][k]) d.push_back(*delays[r][k]);
    }
    const MeanStd ms = mean_std(d);
    out.points.push_back({tau_grid[k], ms.mean, ms.std, d.size()});
    if (ms.mean) {
      xs.push_back(std::log(tau_grid[k]));
      ys.push_back(*ms.mean);
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
  }
  return out;
}

AuditRecord supermartingale_audit(const ExperimentConfig& cfg) {
  cfg.validate();
  require(!cfg.audit_checkpoints.empty(), "audit needs at least one checkpoint");
  std::vector<std::size_t> checkpoints = cfg.audit_checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  const std::size_t horizon = checkpoints.back();
  require(horizon <= cfg.stream.length, "audit checkpoint beyond stream length");

  std::vector<std::vector<double>> values(cfg.n_runs, std::vector<double>(checkpoints.size(), 1.0));
  parallel_for(cfg.n_runs, [&](std::size_t r) {
    const RunSetup setup = prepare_run(cfg, r);
    const auto scores = run_scores(cfg, setup);
    EProcess process(setup.null_model, std::numeric_limits<double>::infinity(),
                     ResetPolicy::kNoReset);
    std::size_t k = 0;
    while (k < checkpoints.size() && checkpoints[k] == 0) values[r][k++] = 1.0;
    for (std::size_t t = 1; t <= horizon && k < checkpoints.size(); ++t) {
      process.update(scores[t - 1]);
      while (k < checkpoints.size() && checkpoints[k] == t) values[r][k++] = std::exp(process.log_m());
    }
  });

  AuditRecord out;
  out.n_streams = cfg.n_runs;
  const double n = static_cast<double>(cfg.n_runs);
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    double mean = 0.0;
    for (std::size_t r = 0; r < cfg.n_runs; ++r) mean += values[r][k];
    mean /= n;
    double ss = 0.0;
    for (std::size_t r = 0; r < cfg.n_runs; ++r) ss += (values[r][k] - mean) * (values[r][k] - mean);
    const double se = cfg.n_runs > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    const bool pass = mean <= 1.0 + 3.0 * se;
    out.checkpoints.push_back({checkpoints[k], mean, se, pass});
    out.all_pass = out.all_pass && pass;
  }
  return out;
}

std::vector<AssertionResult> check_assertions(const ExperimentConfig& cfg, const ExperimentOutcome* outcome,
                                              const SweepReport* sweep, const AuditRecord* audit) {
  const Assertions& a = cfg.assertions;
  std::vector<AssertionResult> out;
  std::optional<double> mean_delay;
  if (outcome) mean_delay = outcome->detection.mean_delay;
  if (!mean_delay && sweep && !sweep->points.empty()) {
    auto at_tau = std::find_if(sweep->points.begin(), sweep->points.end(),
                               [&](const SweepPoint& p) { return p.tau == cfg.detector.tau; });
    mean_delay = (at_tau != sweep->points.end() ? *at_tau : sweep->points.front()).mean_delay;
  }

  if (a.max_far && outcome) {
    const double v = outcome->detection.empirical_far;
    out.push_back({"max_far", v, *a.max_far, v <= *a.max_far});
  }
  if (a.min_mean_delay && mean_delay) {
    out.push_back({"min_mean_delay", *mean_delay, *a.min_mean_delay, *mean_delay >= *a.min_mean_delay});
  }
  if (a.max_mean_delay && mean_delay) {
    out.push_back({"max_mean_delay", *mean_delay, *a.max_mean_delay, *mean_delay <= *a.max_mean_delay});
  }
  if ((a.min_mean_delay || a.max_mean_delay) && !mean_delay) {
    out.push_back({"mean_delay_available", 0.0, 1.0, false});
  }
  if (a.min_adapt_win_fraction && outcome) {
    const double v = outcome->adaptation.adapt_win_fraction;
    out.push_back({"min_adapt_win_fraction", v, *a.min_adapt_win_fraction, v >= *a.min_adapt_win_fraction});
  }
  if (a.audit_must_pass && audit) {
    const bool expected = *a.audit_must_pass;
    out.push_back({"audit_must_pass", audit->all_pass ? 1.0 : 0.0, expected ? 1.0 : 0.0,
                   audit->all_pass == expected});
  }
  return out;
}

void write_trajectories_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
  out << "run,t,score,log_m,alarm\n";
  const auto old_precision = out.precision(17);
  for (const auto& rec : runs) {
    for (const auto& p : rec.trajectory) {
      out << rec.run << ',' << p.t << ',' << p.score << ',' << p.log_m << ',' << (p.alarm ? 1 : 0) << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace driftguard
