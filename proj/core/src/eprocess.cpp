#include "driftguard/eprocess.hpp"

#include <cmath>
#include <string>

#include "driftguard/math.hpp"

namespace driftguard {

std::string_view to_string(ResetPolicy policy) {
  switch (policy) {
    case ResetPolicy::kResetOnAlarm:
      return "reset_on_alarm";
    case ResetPolicy::kNoReset:
      return "no_reset";
  }
  return "unknown";
}

ResetPolicy reset_policy_from_string(std::string_view name) {
  if (name == "reset_on_alarm" || name == "reset") return ResetPolicy::kResetOnAlarm;
  if (name == "no_reset" || name == "literal") return ResetPolicy::kNoReset;
  throw InvalidInput("unknown reset policy '" + std::string(name) + "'");
}

EProcess::EProcess(const CalibrationSummary& calibration, double tau, ResetPolicy policy)
    : EProcess((calibration.validate(), NullModel::from_calibration(calibration)), tau, policy) {}

EProcess::EProcess(const NullModel& null_model, double tau, ResetPolicy policy)
    : null_(null_model), tau_(tau), log_tau_(0.0), policy_(policy) {
  require(!std::isnan(tau) && tau > 1.0, "threshold tau must exceed 1");
  require(std::isfinite(null_.mu_hat) && std::isfinite(null_.lambda) && std::isfinite(null_.log_mgf),
          "null model must be finite");
  require(null_.lambda > 0.0, "lambda must be positive");
  log_tau_ = std::log(tau);
}

bool EProcess::update(double score) {
  require(std::isfinite(score), "score must be finite");
  ++t_;
  log_m_ += null_.increment(score);
  if (log_m_ < log_tau_) return false;
  alarms_.push_back({t_, log_m_});
  if (policy_ == ResetPolicy::kResetOnAlarm) log_m_ = 0.0;
  return true;
}

void EProcess::recalibrate(const CalibrationSummary& calibration) {
  calibration.validate();
  null_ = NullModel::from_calibration(calibration);
}

std::vector<std::uint64_t> EProcess::alarm_times() const {
  std::vector<std::uint64_t> out;
  out.reserve(alarms_.size());
  for (const auto& a : alarms_) out.push_back(a.t);
  return out;
}

std::optional<std::uint64_t> EProcess::first_alarm_after(std::uint64_t t) const {
  for (const auto& a : alarms_) {
    if (a.t > t) return a.t;
  }
  return std::nullopt;
}

double false_alarm_budget(double tau, double alpha_boot) {
  require(!std::isnan(tau) && tau > 1.0, "threshold tau must exceed 1");
  return alpha_boot + 1.0 / tau;
}

}  // namespace driftguard
