#pragma once

#include <cstdint>
#include <optional>

namespace anita {

// Per-iteration parameter tuple: snapshot probability p, interpolation
// weight theta, stepsize eta, update scaling alpha.
struct ScheduleParams {
  double p = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
};

enum class Stage1Mode { probabilistic, derandomized };

// Tracks the first snapshot-change time t1. In probabilistic mode t1 is the
// first iteration whose coin flip accepts; in derandomized mode the first
// refresh is forced at t == n, replacing the geometric t1 by its mean.
struct StageState {
  Stage1Mode mode = Stage1Mode::probabilistic;
  std::optional<std::uint64_t> t1_observed;
};

// General-convex rule. Before t1: constant p = 1/(n+1), theta = 1-1/(2 sqrt n),
// the largest admissible stepsize eta = 1/(L(1+2 sqrt n)), alpha = theta.
// After t1, with s = t-t1+3 sqrt n: p = max{4/s, 4/(n+3)}, theta = 2/(p s),
// eta = 1/(3L), alpha = theta. Eta always sits at its admissible ceiling.
ScheduleParams general_convex_params(std::uint64_t t, const StageState& stage,
                                     std::size_t n, double L);

// Strongly-convex rule, constant in t: p defaults to 1/n,
// theta = min{1, sqrt(mu/(pL))}/2, eta = 1/(L theta (1+1/(1-theta))),
// alpha = 1 + mu*eta.
ScheduleParams strongly_convex_params(std::size_t n, double L, double mu,
                                      std::optional<double> p_override = {});

// Offset after t1 at which the decaying probability bottoms out at 4/(n+3):
// floor(n+3-3 sqrt n).
std::uint64_t stage_boundary(std::size_t n);

}  // namespace anita
