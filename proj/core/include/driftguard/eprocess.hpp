#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "driftguard/calibration.hpp"

namespace driftguard {

enum class ResetPolicy {
  kResetOnAlarm,
  // Never resets: every sample with ln M_t >= ln tau raises an alarm.
  kNoReset,
};

std::string_view to_string(ResetPolicy policy);
ResetPolicy reset_policy_from_string(std::string_view name);

/// Per-step normalizer of the exponential process: each score contributes
/// lambda (s - mu_hat) - log_mgf to ln M_t.
struct NullModel {
  double mu_hat = 0.0;
  double lambda = kDefaultLambda;
  double log_mgf = 0.0;

  static NullModel from_calibration(const CalibrationSummary& cal) {
    return {cal.mu_hat, cal.lambda, cal.psi_bar};
  }

  double increment(double score) const { return lambda * (score - mu_hat) - log_mgf; }
};

struct AlarmEvent {
  std::uint64_t t = 0;
  double log_m = 0.0;  // value that crossed the threshold, before any reset
};

/// Log-domain e-process with a Ville-threshold alarm.
class EProcess {
 public:
  EProcess(const CalibrationSummary& calibration, double tau,
           ResetPolicy policy = ResetPolicy::kResetOnAlarm);
  EProcess(const NullModel& null_model, double tau,
           ResetPolicy policy = ResetPolicy::kResetOnAlarm);

  /// Consumes one score. Returns true if this step raised an alarm.
  bool update(double score);

  /// ln M back to 0. Alarm history, t and the null model are kept.
  void reset() noexcept { log_m_ = 0.0; }

  /// Swaps in a freshly fitted null model (e.g. after adaptation).
  void recalibrate(const CalibrationSummary& calibration);

  double log_m() const noexcept { return log_m_; }
  double log_tau() const noexcept { return log_tau_; }
  double tau() const noexcept { return tau_; }
  std::uint64_t t() const noexcept { return t_; }
  ResetPolicy policy() const noexcept { return policy_; }
  const NullModel& null_model() const noexcept { return null_; }
  const std::vector<AlarmEvent>& alarms() const noexcept { return alarms_; }
  std::vector<std::uint64_t> alarm_times() const;
  std::optional<std::uint64_t> first_alarm_after(std::uint64_t t) const;

 private:
  NullModel null_;
  double tau_;
  double log_tau_;
  ResetPolicy policy_;
  double log_m_ = 0.0;
  std::uint64_t t_ = 0;
  std::vector<AlarmEvent> alarms_;
};

/// alpha_boot + 1/tau: the unconditional time-uniform false-alarm bound.
double false_alarm_budget(double tau, double alpha_boot);

}  // namespace driftguard
