#include "driftguard/csv.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

namespace driftguard {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void row_error(std::size_t line, const std::string& what) {
  throw InvalidInput("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::optional<ScoredSample> ScoreCsvReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (!header_seen_) {
      header_seen_ = true;
      const auto comma = text.find(',');
      if (comma == std::string_view::npos || trim(text.substr(0, comma)) != "t" ||
          trim(text.substr(comma + 1)) != "score") {
        row_error(line_, "expected header 't,score'");
      }
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      row_error(line_, "expected two comma-separated fields");
    }
    const std::string_view t_field = trim(text.substr(0, comma));
    const std::string_view s_field = trim(text.substr(comma + 1));

    ScoredSample row;
    const auto [t_end, t_ec] = std::from_chars(t_field.data(), t_field.data() + t_field.size(), row.t);
    if (t_ec != std::errc() || t_end != t_field.data() + t_field.size()) {
      row_error(line_, "t is not a nonnegative integer");
    }
    const auto [s_end, s_ec] = std::from_chars(s_field.data(), s_field.data() + s_field.size(), row.score);
    if (s_ec != std::errc() || s_end != s_field.data() + s_field.size() || !std::isfinite(row.score)) {
      row_error(line_, "score is not a finite number");
    }
    return row;
  }
  if (in_.bad()) throw InvalidInput("read error after line " + std::to_string(line_));
  return std::nullopt;
}

std::vector<ScoredSample> read_score_csv(std::istream& in) {
  ScoreCsvReader reader(in);
  std::vector<ScoredSample> rows;
  while (auto row = reader.next()) rows.push_back(*row);
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc() ? end : buf);
}

void write_score_csv(std::ostream& out, std::span<const ScoredSample> rows) {
  out << "t,score\n";
  for (const auto& r : rows) out << r.t << ',' << format_double(r.score) << '\n';
}

void write_stream_csv(std::ostream& out, std::span<const LabeledSample> rows) {
  const Eigen::Index dim = rows.empty() ? 0 : rows.front().feature.size();
  out << "t,label";
  for (Eigen::Index j = 1; j <= dim; ++j) out << ",f" << j;
  out << '\n';
  std::size_t t = 0;
  for (const auto& r : rows) {
    require(r.feature.size() == dim, "stream rows must share one feature dimension");
    out << ++t << ',' << r.label;
    for (Eigen::Index j = 0; j < dim; ++j) out << ',' << format_double(r.feature[j]);
    out << '\n';
  }
}

}  // namespace driftguard
