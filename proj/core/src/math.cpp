#include "driftguard/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace driftguard {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

double log_sum_exp(const Vector& values) {
  return log_sum_exp(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

Vector log_softmax(const Vector& logits) {
  return logits.array() - log_sum_exp(logits);
}

Vector softmax(const Vector& logits) {
  const double hi = logits.maxCoeff();
  Vector e = (logits.array() - hi).exp();
  return e / e.sum();
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace driftguard
