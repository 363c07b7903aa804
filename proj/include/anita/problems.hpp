#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "anita/dataio.hpp"

namespace anita {

using Vec = std::vector<double>;

enum class ProblemKind { logistic, least_squares, quad_diag };

// A finite-sum objective f(x) = (1/n) sum_i f_i(x) over R^d with known
// per-component smoothness L and strong-convexity mu of the average.
// Immutable and reentrant; concurrent reads are safe.
//
// Any ridge term lambda/2 ||x||^2 is folded into every component, so the
// per-component smoothness constant absorbs lambda and the average stays
// mu-strongly convex with mu = lambda.
class Problem {
 public:
  // f_i(x) = log(1 + exp(-b_i a_i^T x)) + lambda/2 ||x||^2
  static Problem logistic(SparseDataset ds, double lambda);
  // f_i(x) = 1/2 (a_i^T x - b_i)^2 + lambda/2 ||x||^2
  static Problem least_squares(SparseDataset ds, double lambda);
  // f_i(x) = 1/2 sum_k coeffs[i][k] (x_k - targets[i][k])^2
  static Problem quad_diag(std::vector<Vec> coeffs, std::vector<Vec> targets);

  ProblemKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }
  double lambda() const { return lambda_; }

  double smoothness() const { return smoothness_L_; }
  double strong_convexity() const { return strong_mu_; }

  double component_value(std::size_t i, std::span<const double> x) const;
  void component_grad(std::size_t i, std::span<const double> x,
                      std::span<double> out) const;
  double value(std::span<const double> x) const;
  // Mean of the component gradients, components accumulated left to right.
  void full_grad(std::span<const double> x, std::span<double> out) const;

  const SparseDataset* dataset() const;

  // Stable digest of the problem definition; keys the reference cache.
  std::uint64_t content_hash() const;

 private:
  struct DataPayload {
    SparseDataset ds;
  };
  struct QuadPayload {
    std::vector<Vec> coeffs;
    std::vector<Vec> targets;
  };

  Problem() = default;

  ProblemKind kind_ = ProblemKind::logistic;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  double lambda_ = 0.0;
  double smoothness_L_ = 0.0;
  double strong_mu_ = 0.0;
  std::variant<DataPayload, QuadPayload> payload_;
};

inline std::pair<double, double> constants(const Problem& p) {
  return {p.smoothness(), p.strong_convexity()};
}

// sigma(z) = 1/(1+exp(-z)), overflow-safe on both tails
double stable_sigmoid(double z);
// log(1 + exp(t)) without overflow for large |t|
double softplus(double t);

}  // namespace anita
