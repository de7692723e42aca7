#include "driftguard/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>

namespace driftguard {

namespace {

[[noreturn]] void schema_error(std::string_view where, std::string_view what) {
  throw InvalidInput(std::string(where) + ": " + std::string(what));
}

const Json& field(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_double(const Json& v, std::string_view where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

std::uint64_t as_uint(const Json& v, std::string_view where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  schema_error(where, "expected a nonnegative integer");
}

int as_int(const Json& v, std::string_view where) {
  if (!v.is_number_integer()) schema_error(where, "expected an integer");
  return v.get<int>();
}

bool as_bool(const Json& v, std::string_view where) {
  if (!v.is_boolean()) schema_error(where, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const Json& v, std::string_view where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

Vector as_vector(const Json& v, std::string_view where) {
  if (!v.is_array()) schema_error(where, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = as_double(v[i], where);
  return out;
}

Json from_vector(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json row_major(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Matrix from_row_major(const Json& data, Eigen::Index rows, Eigen::Index cols, std::string_view where) {
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
    schema_error(where, "matrix data length does not match its shape");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_double(data[static_cast<std::size_t>(r * cols + c)], where);
  }
  return m;
}

Json nested_rows(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(from_vector(m.row(r).transpose()));
  return out;
}

Matrix from_nested_rows(const Json& j, std::string_view where) {
  if (!j.is_array() || j.empty()) schema_error(where, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Vector first = as_vector(j[0], where);
  Matrix m(rows, first.size());
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = as_vector(j[static_cast<std::size_t>(r)], where);
    if (row.size() != first.size()) schema_error(where, "ragged matrix rows");
    m.row(r) = row.transpose();
  }
  return m;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(where, "unknown field '" + key + "'");
    }
  }
}

template <class F>
void if_present(const Json& j, const char* key, F&& apply) {
  const auto it = j.find(key);
  if (it != j.end() && !it->is_null()) apply(*it);
}

// Re-throws invariant failures from constructors with the schema location.
template <class F>
auto with_context(std::string_view where, F&& build) {
  try {
    return build();
  } catch (const InvalidInput& e) {
    schema_error(where, e.what());
  } catch (const Json::exception& e) {
    schema_error(where, e.what());
  }
}

}  // namespace

Json to_json(const CalibrationSummary& cal) {
  return Json{{"mu_hat", cal.mu_hat},         {"lambda", cal.lambda},
              {"psi_plugin", cal.psi_plugin}, {"psi_bar", cal.psi_bar},
              {"n", cal.n},                   {"alpha_boot", cal.alpha_boot},
              {"bootstrap_B", cal.bootstrap_B}, {"seed", cal.seed}};
}

CalibrationSummary calibration_from_json(const Json& j) {
  constexpr std::string_view where = "calibration summary";
  return with_context(where, [&] {
    CalibrationSummary cal;
    cal.mu_hat = as_double(field(j, "mu_hat", where), where);
    cal.lambda = as_double(field(j, "lambda", where), where);
    cal.psi_plugin = as_double(field(j, "psi_plugin", where), where);
    cal.psi_bar = as_double(field(j, "psi_bar", where), where);
    cal.n = as_uint(field(j, "n", where), where);
    cal.alpha_boot = as_double(field(j, "alpha_boot", where), where);
    cal.bootstrap_B = as_uint(field(j, "bootstrap_B", where), where);
    cal.seed = as_uint(field(j, "seed", where), where);
    cal.validate();
    return cal;
  });
}

Json to_json(const PromptParams& params) {
  return Json{{"C", params.classes()}, {"d", params.dim()}, {"weights", row_major(params.weights())}};
}

PromptParams params_from_json(const Json& j) {
  constexpr std::string_view where = "prompt params";
  return with_context(where, [&] {
    const auto rows = static_cast<Eigen::Index>(as_uint(field(j, "C", where), where));
    const auto cols = static_cast<Eigen::Index>(as_uint(field(j, "d", where), where));
    return PromptParams(from_row_major(field(j, "weights", where), rows, cols, where));
  });
}

Json to_json(const FisherDiag& fisher) {
  return Json{{"C", fisher.diag.rows()},
              {"d", fisher.diag.cols()},
              {"diag", row_major(fisher.diag)},
              {"gamma_damp", fisher.gamma_damp},
              {"n_samples", fisher.n_samples}};
}

FisherDiag fisher_from_json(const Json& j) {
  constexpr std::string_view where = "Fisher diagonal";
  return with_context(where, [&] {
    FisherDiag f;
    const auto rows = static_cast<Eigen::Index>(as_uint(field(j, "C", where), where));
    const auto cols = static_cast<Eigen::Index>(as_uint(field(j, "d", where), where));
    f.diag = from_row_major(field(j, "diag", where), rows, cols, where);
    f.gamma_damp = as_double(field(j, "gamma_damp", where), where);
    f.n_samples = as_uint(field(j, "n_samples", where), where);
    f.validate();
    return f;
  });
}

Json to_json(const StreamConfig& cfg) {
  Json shift;
  if (const auto* s = std::get_if<MeanTranslate>(&cfg.shift)) {
    shift = Json{{"type", "mean_translate"}, {"delta", from_vector(s->delta)}};
  } else if (const auto* s = std::get_if<CovarianceScale>(&cfg.shift)) {
    shift = Json{{"type", "covariance_scale"}, {"factor", s->factor}};
  } else if (const auto* s = std::get_if<ClassPriorShift>(&cfg.shift)) {
    shift = Json{{"type", "class_prior_shift"}, {"prior", from_vector(s->new_prior)}};
  }
  Json means = Json::array();
  for (const auto& m : cfg.class_means) means.push_back(from_vector(m));
  return Json{{"seed", cfg.seed},
              {"dim", cfg.dim},
              {"classes", cfg.classes},
              {"length", cfg.length},
              {"change_point", optional_json(cfg.change_point)},
              {"shift", shift},
              {"class_means", means},
              {"class_cov", nested_rows(cfg.class_cov)},
              {"prior", from_vector(cfg.prior)}};
}

StreamConfig stream_config_from_json(const Json& j) {
  constexpr std::string_view where = "stream config";
  return with_context(where, [&] {
    reject_unknown(j, {"seed", "dim", "classes", "length", "change_point", "shift", "class_means", "class_cov", "prior"},
                   where);
    int dim = 8, classes = 4;
    if_present(j, "dim", [&](const Json& v) { dim = as_int(v, where); });
    if_present(j, "classes", [&](const Json& v) { classes = as_int(v, where); });
    require(dim >= 1 && classes >= 2, "stream needs dim >= 1 and classes >= 2");

    StreamConfig cfg;
    if (dim >= classes) {
      cfg = StreamConfig::make_default(0, 0, dim, classes);
    } else {
      cfg.dim = dim;
      cfg.classes = classes;
      cfg.class_cov = Matrix::Identity(dim, dim);
      cfg.prior = Vector::Constant(classes, 1.0 / classes);
      cfg.shift = MeanTranslate{Vector::Zero(dim)};
    }
    if_present(j, "seed", [&](const Json& v) { cfg.seed = as_uint(v, where); });
    if_present(j, "length", [&](const Json& v) { cfg.length = as_uint(v, where); });
    if_present(j, "change_point", [&](const Json& v) { cfg.change_point = as_uint(v, where); });
    if_present(j, "class_means", [&](const Json& v) {
      const Matrix m = from_nested_rows(v, where);
      cfg.class_means.clear();
      for (Eigen::Index r = 0; r < m.rows(); ++r) cfg.class_means.push_back(m.row(r).transpose());
    });
    if_present(j, "class_cov", [&](const Json& v) { cfg.class_cov = from_nested_rows(v, where); });
    if_present(j, "prior", [&](const Json& v) { cfg.prior = as_vector(v, where); });
    if_present(j, "shift", [&](const Json& v) {
      const std::string type = as_string(field(v, "type", where), where);
      if (type == "mean_translate") {
        reject_unknown(v, {"type", "delta"}, where);
        cfg.shift = MeanTranslate{as_vector(field(v, "delta", where), where)};
      } else if (type == "covariance_scale") {
        reject_unknown(v, {"type", "factor"}, where);
        cfg.shift = CovarianceScale{as_double(field(v, "factor", where), where)};
      } else if (type == "class_prior_shift") {
        reject_unknown(v, {"type", "prior"}, where);
        cfg.shift = ClassPriorShift{as_vector(field(v, "prior", where), where)};
      } else {
        schema_error(where, "unknown shift type '" + type + "'");
      }
    });
    cfg.validate();
    return cfg;
  });
}

Json to_json(const ExperimentConfig& cfg) {
  const auto& a = cfg.assertions;
  return Json{
      {"stream", to_json(cfg.stream)},
      {"score", {{"alpha_score", cfg.score.alpha_score}, {"score_cap", cfg.score.score_cap}}},
      {"detector",
       {{"tau", cfg.detector.tau},
        {"lambda", cfg.detector.lambda},
        {"alpha_boot", cfg.detector.alpha_boot},
        {"B", cfg.detector.B},
        {"reset_policy", std::string(to_string(cfg.detector.reset_policy))},
        {"psi_mode", std::string(to_string(cfg.detector.psi_mode))},
        {"psi_undercut", cfg.detector.psi_undercut}}},
      {"adapter",
       {{"enabled", cfg.adapter.enabled},
        {"eta", cfg.adapter.eta},
        {"gamma_damp", cfg.adapter.gamma_damp},
        {"ece", {{"n_bins", cfg.adapter.ece.n_bins}, {"sharpness", cfg.adapter.ece.sharpness}}},
        {"fisher_mode", std::string(to_string(cfg.adapter.fisher_source))},
        {"window", cfg.adapter.window},
        {"use_cmp", cfg.adapter.use_cmp},
        {"cmp_buffer_size", cfg.adapter.cmp_buffer_size}}},
      {"score_source", std::string(to_string(cfg.score_source))},
      {"gaussian",
       {{"null_mean", cfg.gaussian.null_mean}, {"null_sd", cfg.gaussian.null_sd}, {"shift", cfg.gaussian.shift}}},
      {"n_runs", cfg.n_runs},
      {"calibration_size", cfg.calibration_size},
      {"training_size", cfg.training_size},
      {"master_seed", cfg.master_seed},
      {"tau_grid", cfg.tau_grid},
      {"audit_checkpoints", cfg.audit_checkpoints},
      {"assertions",
       {{"max_far", optional_json(a.max_far)},
        {"min_mean_delay", optional_json(a.min_mean_delay)},
        {"max_mean_delay", optional_json(a.max_mean_delay)},
        {"min_adapt_win_fraction", optional_json(a.min_adapt_win_fraction)},
        {"audit_must_pass", optional_json(a.audit_must_pass)}}},
  };
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  constexpr std::string_view where = "experiment config";
  return with_context(where, [&] {
    reject_unknown(j,
                   {"stream", "score", "detector", "adapter", "score_source", "gaussian", "n_runs",
                    "calibration_size", "training_size", "master_seed", "tau_grid", "audit_checkpoints",
                    "assertions"},
                   where);
    ExperimentConfig cfg = ExperimentConfig::make_default();
    if_present(j, "stream", [&](const Json& v) { cfg.stream = stream_config_from_json(v); });
    if_present(j, "score", [&](const Json& v) {
      reject_unknown(v, {"alpha_score", "score_cap"}, "score");
      if_present(v, "alpha_score", [&](const Json& x) { cfg.score.alpha_score = as_double(x, "score"); });
      if_present(v, "score_cap", [&](const Json& x) { cfg.score.score_cap = as_double(x, "score"); });
    });
    if_present(j, "detector", [&](const Json& v) {
      constexpr std::string_view w = "detector";
      reject_unknown(v, {"tau", "lambda", "alpha_boot", "B", "reset_policy", "psi_mode", "psi_undercut"}, w);
      auto& d = cfg.detector;
      if_present(v, "tau", [&](const Json& x) { d.tau = as_double(x, w); });
      if_present(v, "lambda", [&](const Json& x) { d.lambda = as_double(x, w); });
      if_present(v, "alpha_boot", [&](const Json& x) { d.alpha_boot = as_double(x, w); });
      if_present(v, "B", [&](const Json& x) { d.B = as_uint(x, w); });
      if_present(v, "reset_policy", [&](const Json& x) { d.reset_policy = reset_policy_from_string(as_string(x, w)); });
      if_present(v, "psi_mode", [&](const Json& x) { d.psi_mode = psi_mode_from_string(as_string(x, w)); });
      if_present(v, "psi_undercut", [&](const Json& x) { d.psi_undercut = as_double(x, w); });
    });
    if_present(j, "adapter", [&](const Json& v) {
      constexpr std::string_view w = "adapter";
      reject_unknown(v, {"enabled", "eta", "gamma_damp", "ece", "fisher_mode", "window", "use_cmp", "cmp_buffer_size"},
                     w);
      auto& a = cfg.adapter;
      if_present(v, "enabled", [&](const Json& x) { a.enabled = as_bool(x, w); });
      if_present(v, "eta", [&](const Json& x) { a.eta = as_double(x, w); });
      if_present(v, "gamma_damp", [&](const Json& x) { a.gamma_damp = as_double(x, w); });
      if_present(v, "ece", [&](const Json& x) {
        reject_unknown(x, {"n_bins", "sharpness"}, "adapter.ece");
        if_present(x, "n_bins", [&](const Json& y) { a.ece.n_bins = as_int(y, w); });
        if_present(x, "sharpness", [&](const Json& y) { a.ece.sharpness = as_double(y, w); });
      });
      if_present(v, "fisher_mode", [&](const Json& x) { a.fisher_source = fisher_source_from_string(as_string(x, w)); });
      if_present(v, "window", [&](const Json& x) { a.window = as_uint(x, w); });
      if_present(v, "use_cmp", [&](const Json& x) { a.use_cmp = as_bool(x, w); });
      if_present(v, "cmp_buffer_size", [&](const Json& x) { a.cmp_buffer_size = as_uint(x, w); });
    });
    if_present(j, "score_source",
               [&](const Json& v) { cfg.score_source = score_source_from_string(as_string(v, where)); });
    if_present(j, "gaussian", [&](const Json& v) {
      constexpr std::string_view w = "gaussian";
      reject_unknown(v, {"null_mean", "null_sd", "shift"}, w);
      if_present(v, "null_mean", [&](const Json& x) { cfg.gaussian.null_mean = as_double(x, w); });
      if_present(v, "null_sd", [&](const Json& x) { cfg.gaussian.null_sd = as_double(x, w); });
      if_present(v, "shift", [&](const Json& x) { cfg.gaussian.shift = as_double(x, w); });
    });
    if_present(j, "n_runs", [&](const Json& v) { cfg.n_runs = as_uint(v, where); });
    if_present(j, "calibration_size", [&](const Json& v) { cfg.calibration_size = as_uint(v, where); });
    if_present(j, "training_size", [&](const Json& v) { cfg.training_size = as_uint(v, where); });
    if_present(j, "master_seed", [&](const Json& v) { cfg.master_seed = as_uint(v, where); });
    if_present(j, "tau_grid", [&](const Json& v) {
      const Vector g = as_vector(v, where);
      cfg.tau_grid.assign(g.data(), g.data() + g.size());
    });
    if_present(j, "audit_checkpoints", [&](const Json& v) {
      if (!v.is_array()) schema_error(where, "audit_checkpoints must be an array");
      cfg.audit_checkpoints.clear();
      for (const auto& x : v) cfg.audit_checkpoints.push_back(as_uint(x, where));
    });
    if_present(j, "assertions", [&](const Json& v) {
      constexpr std::string_view w = "assertions";
      reject_unknown(v, {"max_far", "min_mean_delay", "max_mean_delay", "min_adapt_win_fraction", "audit_must_pass"},
                     w);
      auto& a = cfg.assertions;
      if_present(v, "max_far", [&](const Json& x) { a.max_far = as_double(x, w); });
      if_present(v, "min_mean_delay", [&](const Json& x) { a.min_mean_delay = as_double(x, w); });
      if_present(v, "max_mean_delay", [&](const Json& x) { a.max_mean_delay = as_double(x, w); });
      if_present(v, "min_adapt_win_fraction", [&](const Json& x) { a.min_adapt_win_fraction = as_double(x, w); });
      if_present(v, "audit_must_pass", [&](const Json& x) { a.audit_must_pass = as_bool(x, w); });
    });
    cfg.validate();
    return cfg;
  });
}

Json to_json(const RunRecord& run) {
  Json j{{"run", run.run},
         {"alarms", run.alarms},
         {"delay", optional_json(run.delay)},
         {"falsely_alarmed", run.falsely_alarmed},
         {"aborted", run.aborted},
         {"n_adapt_steps", run.n_adapt_steps},
         {"growth_rate", optional_json(run.growth_rate)},
         {"acc_pre", optional_json(run.acc_pre)},
         {"acc_post_adapt", optional_json(run.acc_post_adapt)},
         {"acc_post_no_adapt", optional_json(run.acc_post_no_adapt)},
         {"ece_pre", optional_json(run.ece_pre)},
         {"ece_post_adapt", optional_json(run.ece_post_adapt)},
         {"ece_post_no_adapt", optional_json(run.ece_post_no_adapt)}};
  if (run.aborted) j["error"] = run.error;
  return j;
}

Json to_json(const DetectionReport& report) {
  Json runs = Json::array();
  for (const auto& r : report.runs) runs.push_back(to_json(r));
  return Json{{"runs", runs},
              {"empirical_far", report.empirical_far},
              {"mean_delay", optional_json(report.mean_delay)},
              {"delay_std", optional_json(report.delay_std)},
              {"n_detected", report.n_detected},
              {"n_aborted", report.n_aborted},
              {"gamma_hat", report.gamma_hat},
              {"predicted_delay", optional_json(report.predicted_delay)},
              {"far_bound", report.far_bound}};
}

Json to_json(const AdaptationReport& report) {
  return Json{{"acc_pre", optional_json(report.acc_pre)},
              {"acc_post_no_adapt", optional_json(report.acc_post_no_adapt)},
              {"acc_post_adapt", optional_json(report.acc_post_adapt)},
              {"ece_pre", optional_json(report.ece_pre)},
              {"ece_post_no_adapt", optional_json(report.ece_post_no_adapt)},
              {"ece_post_adapt", optional_json(report.ece_post_adapt)},
              {"n_adapt_steps", report.n_adapt_steps},
              {"adapt_win_fraction", report.adapt_win_fraction}};
}

Json to_json(const SweepReport& report) {
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back(Json{{"tau", p.tau},
                          {"mean_delay", optional_json(p.mean_delay)},
                          {"delay_std", optional_json(p.delay_std)},
                          {"n_detected", p.n_detected}});
  }
  return Json{{"points", points},
              {"slope", report.slope},
              {"intercept", report.intercept},
              {"gamma_hat", report.gamma_hat}};
}

Json to_json(const AuditRecord& audit) {
  Json cps = Json::array();
  for (const auto& c : audit.checkpoints) {
    cps.push_back(Json{{"t", c.t}, {"mean", c.mean}, {"std_error", c.std_error}, {"pass", c.pass}});
  }
  return Json{{"checkpoints", cps}, {"n_streams", audit.n_streams}, {"all_pass", audit.all_pass}};
}

Json to_json(const std::vector<AssertionResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) {
    out.push_back(Json{{"name", r.name}, {"observed", r.observed}, {"bound", r.bound}, {"pass", r.pass}});
  }
  return out;
}

namespace {

void check_unit_or_null(const Json& j, const char* key, std::string_view where) {
  const Json& v = field(j, key, where);
  if (v.is_null()) return;
  const double x = as_double(v, where);
  if (!(x >= 0.0 && x <= 1.0)) schema_error(where, std::string(key) + " outside [0, 1]");
}

void check_number_or_null(const Json& j, const char* key, std::string_view where) {
  const Json& v = field(j, key, where);
  if (!v.is_null()) as_double(v, where);
}

}  // namespace

void validate_detection_report(const Json& j) {
  constexpr std::string_view where = "detection report";
  const Json& runs = field(j, "runs", where);
  if (!runs.is_array()) schema_error(where, "runs must be an array");
  for (const auto& r : runs) {
    const Json& alarms = field(r, "alarms", where);
    if (!alarms.is_array()) schema_error(where, "alarms must be an array");
    std::uint64_t prev = 0;
    for (const auto& a : alarms) {
      const auto t = as_uint(a, where);
      if (t <= prev) schema_error(where, "alarm times must be strictly increasing");
      prev = t;
    }
    const Json& delay = field(r, "delay", where);
    if (!delay.is_null()) as_uint(delay, where);
    as_bool(field(r, "falsely_alarmed", where), where);
    as_bool(field(r, "aborted", where), where);
  }
  check_unit_or_null(j, "empirical_far", where);
  check_number_or_null(j, "mean_delay", where);
  check_number_or_null(j, "delay_std", where);
  check_number_or_null(j, "predicted_delay", where);
  as_double(field(j, "gamma_hat", where), where);
  as_uint(field(j, "n_detected", where), where);
}

void validate_adaptation_report(const Json& j) {
  constexpr std::string_view where = "adaptation report";
  for (const char* key : {"acc_pre", "acc_post_no_adapt", "acc_post_adapt", "ece_pre", "ece_post_no_adapt",
                          "ece_post_adapt", "adapt_win_fraction"}) {
    check_unit_or_null(j, key, where);
  }
  as_double(field(j, "n_adapt_steps", where), where);
}

void validate_sweep_report(const Json& j) {
  constexpr std::string_view where = "sweep report";
  const Json& points = field(j, "points", where);
  if (!points.is_array()) schema_error(where, "points must be an array");
  for (const auto& p : points) {
    if (as_double(field(p, "tau", where), where) <= 1.0) schema_error(where, "tau must exceed 1");
    check_number_or_null(p, "mean_delay", where);
    as_uint(field(p, "n_detected", where), where);
  }
  as_double(field(j, "slope", where), where);
  as_double(field(j, "gamma_hat", where), where);
}

void validate_audit_record(const Json& j) {
  constexpr std::string_view where = "audit record";
  const Json& cps = field(j, "checkpoints", where);
  if (!cps.is_array() || cps.empty()) schema_error(where, "checkpoints must be a nonempty array");
  for (const auto& c : cps) {
    as_uint(field(c, "t", where), where);
    as_double(field(c, "mean", where), where);
    as_double(field(c, "std_error", where), where);
    as_bool(field(c, "pass", where), where);
  }
  as_bool(field(j, "all_pass", where), where);
}

}  // namespace driftguard
