#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "driftguard/csv.hpp"
#include "driftguard/harness.hpp"
#include "driftguard/serialization.hpp"

namespace driftguard::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMinCalibrationRows = 10;

// Raised for conditions that map directly to an exit code.
struct CliError : std::runtime_error {
  CliError(ExitCode code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  ExitCode code;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError(kInputFormat, "cannot open '" + path + "'");
  return f;
}

Json read_json_file(const std::string& path) {
  auto f = open_input(path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw CliError(kInputFormat, path + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string scores;
  std::string out;
  double lambda = kDefaultLambda;
  std::uint64_t B = 1000;
  double alpha_boot = 0.05;
  std::uint64_t seed = 0;
};

int cmd_calibrate(const CalibrateArgs& a, std::istream& in, std::ostream& out) {
  std::vector<ScoredSample> rows;
  if (a.scores == "-") {
    rows = read_score_csv(in);
  } else {
    auto f = open_input(a.scores);
    rows = read_score_csv(f);
  }
  if (rows.size() < kMinCalibrationRows) {
    throw CliError(kInsufficientData, "calibration needs at least " + std::to_string(kMinCalibrationRows) +
                                          " rows, got " + std::to_string(rows.size()));
  }
  std::vector<double> scores;
  scores.reserve(rows.size());
  for (const auto& r : rows) scores.push_back(r.score);

  const CalibrationSummary cal = fit_calibration(scores, a.lambda, {a.B, a.alpha_boot, a.seed});
  const std::string text = pretty(to_json(cal));
  write_text_file(a.out, text);
  (void)calibration_from_json(Json::parse(text));

  out << "mu_hat " << format_double(cal.mu_hat) << '\n'
      << "psi_plugin " << format_double(cal.psi_plugin) << '\n'
      << "psi_bar " << format_double(cal.psi_bar) << '\n';
  return kOk;
}

// ------------------------------------------------------------------- detect

struct DetectArgs {
  std::string calibration;
  std::string scores = "-";
  double tau = 100.0;
  std::string reset_policy = "reset_on_alarm";
  std::string psi_source = "bootstrap";
};

int cmd_detect(const DetectArgs& a, std::istream& in, std::ostream& out) {
  CalibrationSummary cal = calibration_from_json(read_json_file(a.calibration));
  if (a.psi_source == "plugin") cal.psi_bar = cal.psi_plugin;
  EProcess detector(cal, a.tau, reset_policy_from_string(a.reset_policy));

  std::optional<std::ifstream> file;
  if (a.scores != "-") file = open_input(a.scores);
  ScoreCsvReader reader(file ? static_cast<std::istream&>(*file) : in);
  while (const auto row = reader.next()) {
    if (detector.update(row->score)) {
      out << Json{{"t", row->t}, {"log_m", detector.alarms().back().log_m}}.dump() << std::endl;
    }
  }
  return kOk;
}

// --------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string config;
  std::string mode;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool trajectories = false;
};

// Writes `doc`, reads it back and runs `check` on the parsed copy.
void write_validated(const fs::path& path, const Json& doc, const std::function<void(const Json&)>& check,
                     std::vector<std::string>& written) {
  write_text_file(path, pretty(doc));
  auto f = open_input(path.string());
  check(Json::parse(f));
  written.push_back(path.string());
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = experiment_config_from_json(read_json_file(a.config));
  cfg.master_seed = a.seed;
  if (a.mode == "adapt") cfg.adapter.enabled = true;
  cfg.validate();

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;

  const Json canonical = to_json(cfg);
  write_validated(dir / "config.json", canonical,
                  [](const Json& j) { (void)experiment_config_from_json(j); }, written);

  std::vector<AssertionResult> checks;
  const RunOptions options{a.trajectories};
  if (a.mode == "null_far" || a.mode == "adapt") {
    const ExperimentOutcome outcome = run_mfisher(cfg, options);
    write_validated(dir / "detection_report.json", to_json(outcome.detection), validate_detection_report, written);
    if (a.mode == "adapt") {
      write_validated(dir / "adaptation_report.json", to_json(outcome.adaptation), validate_adaptation_report,
                      written);
    }
    if (a.trajectories) {
      std::ostringstream csv;
      write_trajectories_csv(csv, outcome.detection.runs);
      write_text_file(dir / "trajectories.csv", csv.str());
      written.push_back((dir / "trajectories.csv").string());
    }
    checks = check_assertions(cfg, &outcome, nullptr, nullptr);
  } else if (a.mode == "delay_sweep") {
    const SweepReport sweep = delay_scaling_sweep(cfg, cfg.tau_grid);
    write_validated(dir / "sweep_report.json", to_json(sweep), validate_sweep_report, written);
    checks = check_assertions(cfg, nullptr, &sweep, nullptr);
  } else {
    const AuditRecord audit = supermartingale_audit(cfg);
    write_validated(dir / "audit_record.json", to_json(audit), validate_audit_record, written);
    checks = check_assertions(cfg, nullptr, nullptr, &audit);
  }

  write_validated(dir / "assertions.json", to_json(checks), [](const Json& j) {
    if (!j.is_array()) throw InvalidInput("assertions file must hold an array");
  }, written);

  const Json manifest{{"config_hash", config_hash(canonical.dump())},
                      {"tool_version", DRIFTGUARD_VERSION},
                      {"timestamp", utc_timestamp()},
                      {"mode", a.mode},
                      {"output_paths", written}};
  write_text_file(dir / "manifest.json", pretty(manifest));

  bool ok = true;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " observed=" << format_double(c.observed)
        << " bound=" << format_double(c.bound) << '\n';
    ok = ok && c.pass;
  }
  if (!ok) err << "driftguard: assertion block violated\n";
  return ok ? kOk : kFailure;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::uint64_t seed = 0;
  std::string config;
  std::string kind = "stream";
  std::string out = "-";
  std::optional<std::size_t> length;
  std::optional<std::size_t> change_point;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig::make_default()
                                          : experiment_config_from_json(read_json_file(a.config));
  if (a.length) cfg.stream.length = *a.length;
  if (a.change_point) cfg.stream.change_point = *a.change_point;
  cfg.master_seed = a.seed;
  cfg.stream.seed = a.seed;
  cfg.validate();

  std::ostringstream csv;
  if (a.kind == "stream") {
    const auto samples = generate(cfg.stream);
    write_stream_csv(csv, samples);
  } else {
    const RunSetup setup = prepare_run(cfg, 0);
    const auto scores = run_scores(cfg, setup);
    std::vector<ScoredSample> rows;
    rows.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) rows.push_back({i + 1, scores[i]});
    write_score_csv(csv, rows);
  }
  if (a.out == "-") {
    out << csv.str();
  } else {
    write_text_file(a.out, csv.str());
  }
  return kOk;
}

}  // namespace

std::string config_hash(const std::string& canonical_json) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical_json.data(), canonical_json.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential drift detection with Fisher-preconditioned adaptation", "driftguard"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DRIFTGUARD_VERSION);

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Fit null-score statistics from a t,score CSV");
  calibrate->add_option("--scores", cal.scores, "Calibration score CSV ('-' for stdin)")->required();
  calibrate->add_option("--out", cal.out, "Output calibration JSON")->required();
  calibrate->add_option("--lambda", cal.lambda, "Exponential tilt")->capture_default_str();
  calibrate->add_option("--B", cal.B, "Bootstrap resamples")->capture_default_str();
  calibrate->add_option("--alpha-boot", cal.alpha_boot, "Bootstrap level")->capture_default_str();
  calibrate->add_option("--seed", cal.seed, "Bootstrap seed")->capture_default_str();

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Stream t,score rows through the e-process");
  detect->add_option("--calibration", det.calibration, "Calibration JSON")->required();
  detect->add_option("--scores", det.scores, "Score CSV ('-' for stdin)")->capture_default_str();
  detect->add_option("--tau", det.tau, "Alarm threshold")->capture_default_str()->check(CLI::PositiveNumber);
  detect->add_option("--reset-policy", det.reset_policy, "reset_on_alarm | no_reset")
      ->capture_default_str()
      ->check(CLI::IsMember({"reset_on_alarm", "no_reset"}));
  detect->add_option("--psi-source", det.psi_source, "bootstrap (psi_bar) | plugin (psi_plugin)")
      ->capture_default_str()
      ->check(CLI::IsMember({"bootstrap", "plugin"}));

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config");
  experiment->add_option("--config", exp.config, "Experiment config JSON")->required();
  experiment->add_option("--mode", exp.mode, "null_far | delay_sweep | adapt | audit")
      ->required()
      ->check(CLI::IsMember({"null_far", "delay_sweep", "adapt", "audit"}));
  experiment->add_option("--out-dir", exp.out_dir, "Directory for reports")->required();
  experiment->add_option("--seed", exp.seed, "Master seed")->required();
  experiment->add_flag("--trajectories", exp.trajectories, "Also dump per-run trajectories CSV");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Dump a simulated stream or score stream as CSV");
  simulate->add_option("--seed", sim.seed, "Stream seed")->required();
  simulate->add_option("--config", sim.config, "Experiment config JSON (defaults if omitted)");
  simulate->add_option("--kind", sim.kind, "stream | scores")
      ->capture_default_str()
      ->check(CLI::IsMember({"stream", "scores"}));
  simulate->add_option("--out", sim.out, "Output CSV ('-' for stdout)")->capture_default_str();
  simulate->add_option("--length", sim.length, "Override stream length");
  simulate->add_option("--change-point", sim.change_point, "Override change point");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (calibrate->parsed()) return cmd_calibrate(cal, in, out);
    if (detect->parsed()) return cmd_detect(det, in, out);
    if (experiment->parsed()) return cmd_experiment(exp, out, err);
    return cmd_simulate(sim, out);
  } catch (const CliError& e) {
    err << "driftguard: " << e.what() << '\n';
    return e.code;
  } catch (const InsufficientData& e) {
    err << "driftguard: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const InvalidInput& e) {
    err << "driftguard: " << e.what() << '\n';
    return kInputFormat;
  } catch (const Json::exception& e) {
    err << "driftguard: " << e.what() << '\n';
    return kInputFormat;
  } catch (const std::exception& e) {
    err << "driftguard: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace driftguard::cli
