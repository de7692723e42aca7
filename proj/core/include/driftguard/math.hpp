#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace driftguard {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when an input violates a documented precondition (shape, range,
/// finiteness). Maps to "input format" failures at the command line.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a data set is well-formed but too small for the requested fit.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerically stable ln(sum exp(x_i)). Empty input returns -inf.
double log_sum_exp(std::span<const double> values);
double log_sum_exp(const Vector& values);

Vector softmax(const Vector& logits);
Vector log_softmax(const Vector& logits);

// Logistic function without overflow for large |x|.
double sigmoid(double x);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

void require(bool condition, const std::string& message);

}  // namespace driftguard
