#pragma once

#include <cstdint>

#include "anita/problems.hpp"

namespace anita {

// Snapshot point w with its cached full gradient and function value.
// grad_w always equals full_grad(p, w); refresh_snapshot is the only way to
// change w. Owned by a single solver run.
struct SnapshotCache {
  Vec w;
  Vec grad_w;
  double f_w = 0.0;
};

// Cumulative count of component-gradient evaluations. Function-value
// evaluations are free; a full-gradient refresh adds exactly n and each
// estimator call adds exactly 2.
struct GradCounter {
  std::uint64_t total = 0;
};

// Variance-reduced estimate of grad f(u): grad f_i(u) - grad f_i(w) + grad_w.
// Charges 2 to the counter. When u == w the two component terms cancel
// exactly and the result equals grad_w.
void estimate(const Problem& p, const SnapshotCache& cache,
              std::span<const double> u, std::size_t i, GradCounter& ctr,
              std::span<double> out);

// Moves the snapshot to new_w and recomputes its full gradient and value.
// Charges n to the counter.
void refresh_snapshot(const Problem& p, SnapshotCache& cache, Vec new_w,
                      GradCounter& ctr);

// Exact conditional variance of the estimator at u, by enumerating all
// components: (1/n) sum_i ||grad f_i(u) - grad f_i(w) + grad f(w) - grad f(u)||^2.
// Test-only tool; does not touch any counter.
double exhaustive_variance(const Problem& p, const SnapshotCache& cache,
                           std::span<const double> u);

}  // namespace anita
