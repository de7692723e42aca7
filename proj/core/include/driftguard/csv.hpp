#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "driftguard/stream_sim.hpp"

namespace driftguard {

/// Line-at-a-time reader for `t,score` files. Blank lines are skipped; a
/// completely empty input yields no rows. Malformed content throws
/// InvalidInput naming the offending line.
class ScoreCsvReader {
 public:
  explicit ScoreCsvReader(std::istream& in) : in_(in) {}

  std::optional<ScoredSample> next();
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  bool header_seen_ = false;
};

std::vector<ScoredSample> read_score_csv(std::istream& in);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

void write_score_csv(std::ostream& out, std::span<const ScoredSample> rows);
/// Header `t,label,f1..fd`; t starts at 1.
void write_stream_csv(std::ostream& out, std::span<const LabeledSample> rows);

}  // namespace driftguard
