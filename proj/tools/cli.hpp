#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace driftguard::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // assertion violated or internal error
  kInputFormat = 2,
  kInsufficientData = 3,
  kUsage = 4,
};

/// Entry point without argv[0]. Never throws; every failure maps to an exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of the canonical (sorted-key, compact) dump of a config.
std::string config_hash(const std::string& canonical_json);

}  // namespace driftguard::cli
