#pragma once

#include <json.hpp>

#include "driftguard/calibration.hpp"
#include "driftguard/fisher_adapt.hpp"
#include "driftguard/harness.hpp"
#include "driftguard/stream_sim.hpp"
#include "driftguard/toy_model.hpp"

namespace driftguard {

using Json = nlohmann::json;

// Readers throw InvalidInput on missing fields, wrong types, or values that
// violate the type's invariants. Writers emit exactly what the readers accept.

Json to_json(const CalibrationSummary& cal);
CalibrationSummary calibration_from_json(const Json& j);

/// {"C": rows, "d": cols, "weights": [row-major]}
Json to_json(const PromptParams& params);
PromptParams params_from_json(const Json& j);

Json to_json(const FisherDiag& fisher);
FisherDiag fisher_from_json(const Json& j);

Json to_json(const StreamConfig& cfg);
/// Missing fields take the defaults of StreamConfig::make_default.
StreamConfig stream_config_from_json(const Json& j);

Json to_json(const ExperimentConfig& cfg);
/// Every section is optional; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const Json& j);

Json to_json(const RunRecord& run);
Json to_json(const DetectionReport& report);
Json to_json(const AdaptationReport& report);
Json to_json(const SweepReport& report);
Json to_json(const AuditRecord& audit);
Json to_json(const std::vector<AssertionResult>& results);

/// Structural checks used to validate report files after writing.
void validate_detection_report(const Json& j);
void validate_adaptation_report(const Json& j);
void validate_sweep_report(const Json& j);
void validate_audit_record(const Json& j);

}  // namespace driftguard
