#pragma once

// Reference computations for tests. Everything here is written directly from
// the defining formulas in extended precision and shares no code with the
// library beyond its data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using LD = long double;
using VecL = std::vector<LD>;

inline VecL softmax(const Eigen::VectorXd& z) {
  LD hi = -std::numeric_limits<LD>::infinity();
  for (Eigen::Index i = 0; i < z.size(); ++i) hi = std::max<LD>(hi, z[i]);
  VecL p(static_cast<std::size_t>(z.size()));
  LD total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(static_cast<LD>(z[static_cast<Eigen::Index>(i)]) - hi);
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

inline Eigen::VectorXd logits(const Eigen::MatrixXd& P, const Eigen::VectorXd& x) {
  Eigen::VectorXd z(P.rows());
  for (Eigen::Index c = 0; c < P.rows(); ++c) {
    LD acc = 0;
    for (Eigen::Index j = 0; j < P.cols(); ++j) acc += static_cast<LD>(P(c, j)) * x[j];
    z[c] = static_cast<double>(acc);
  }
  return z;
}

/// sum_k p_k ln(C p_k) for p = softmax(z).
inline LD kl_to_uniform(const Eigen::VectorXd& z) {
  const VecL p = softmax(z);
  const LD C = static_cast<LD>(p.size());
  LD kl = 0;
  for (LD v : p) {
    if (v > 0) kl += v * std::log(C * v);
  }
  return kl;
}

inline LD log_prob(const Eigen::MatrixXd& P, const Eigen::VectorXd& x, int y) {
  const Eigen::VectorXd z = logits(P, x);
  LD hi = z.maxCoeff();
  LD total = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) total += std::exp(static_cast<LD>(z[i]) - hi);
  return static_cast<LD>(z[y]) - hi - std::log(total);
}

/// Central difference of f with respect to every entry of M.
template <class F>
Eigen::MatrixXd central_difference(const Eigen::MatrixXd& M, F&& f, double h) {
  Eigen::MatrixXd grad(M.rows(), M.cols());
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      Eigen::MatrixXd plus = M, minus = M;
      plus(r, c) += h;
      minus(r, c) -= h;
      grad(r, c) = static_cast<double>((static_cast<LD>(f(plus)) - static_cast<LD>(f(minus))) / (2.0L * h));
    }
  }
  return grad;
}

/// ||a - b|| / max(||a||, ||b||), 0 when both vanish.
inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

/// E_{y ~ p(.|x)} [(d/dP ln p(y|x))^2], enumerating every class, averaged over xs.
inline Eigen::MatrixXd fisher_by_enumeration(const Eigen::MatrixXd& P, const std::vector<Eigen::VectorXd>& xs) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(P.rows(), P.cols());
  for (const auto& x : xs) {
    const VecL p = softmax(logits(P, x));
    for (Eigen::Index y = 0; y < P.rows(); ++y) {
      for (Eigen::Index c = 0; c < P.rows(); ++c) {
        const LD resid = (c == y ? 1.0L : 0.0L) - p[static_cast<std::size_t>(c)];
        for (Eigen::Index j = 0; j < P.cols(); ++j) {
          const LD g = resid * x[j];
          acc(c, j) += static_cast<double>(p[static_cast<std::size_t>(y)] * g * g);
        }
      }
    }
  }
  return acc / static_cast<double>(xs.size());
}

/// KL(softmax(a) || softmax(b)).
inline LD kl(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const VecL p = softmax(a), q = softmax(b);
  LD out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) out += p[i] * std::log(p[i] / q[i]);
  }
  return out;
}

struct ReplayStep {
  LD log_m = 0;
  bool alarm = false;
};

/// Direct product of the factors exp(lambda (s - mu) - psi), restarted at 1
/// after each crossing when `reset` is set.
inline std::vector<ReplayStep> replay(const std::vector<double>& scores, double mu, double lambda, double psi,
                                      double tau, bool reset) {
  std::vector<ReplayStep> out;
  LD m = 1;
  for (double s : scores) {
    m *= std::exp(static_cast<LD>(lambda) * (static_cast<LD>(s) - mu) - psi);
    ReplayStep step{std::log(m), m >= static_cast<LD>(tau)};
    out.push_back(step);
    if (step.alarm && reset) m = 1;
  }
  return out;
}

/// Binned |accuracy - confidence| weighted by bin mass; bins (k/B, (k+1)/B].
inline double ece_binned(const std::vector<std::vector<double>>& probs, const std::vector<int>& labels, int bins) {
  std::vector<LD> conf(bins, 0), acc(bins, 0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto& p = probs[i];
    const auto top = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    const double c = p[static_cast<std::size_t>(top)];
    int b = static_cast<int>(std::ceil(c * bins)) - 1;
    b = std::clamp(b, 0, bins - 1);
    conf[b] += c;
    acc[b] += top == labels[i] ? 1 : 0;
    ++count[b];
  }
  LD total = 0;
  for (int b = 0; b < bins; ++b) total += std::fabs(acc[b] - conf[b]);
  return static_cast<double>(total / static_cast<LD>(probs.size()));
}

}  // namespace oracle
