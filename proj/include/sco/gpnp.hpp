#pragma once

// Gradient projection Newton pursuit for min f(x) s.t. ||x||_0 <= s.
//
// Each iteration takes a hard-thresholded gradient step with Armijo-type
// backtracking, then, when the support has settled or the gradient is small,
// tries a Newton step restricted to an s-element working set. The Newton point
// replaces the gradient point only if it passes the same sufficient-decrease
// test.

#include "sco/core.hpp"
#include "sco/thresholding.hpp"

#include <optional>

namespace sco {

struct GradientStep {
  ThresholdResult u;
  double alpha = 0.0;
  int q = 0;
  double f_u = 0.0;
};

/// Smallest q in [0, max_backtracks] with
///   f(u) <= f(x) - (sigma/2) ||u - x||^2,  u = Pi_s(x - tau gamma^q grad f(x)).
/// Returns nullopt when no such q exists (line search stalled).
std::optional<GradientStep> gradient_projection_step(const Objective& obj, const Vector& x, Index s,
                                                     const SolverConfig& cfg);
/// Same, reusing f(x) and grad f(x) already known to the caller.
std::optional<GradientStep> gradient_projection_step(const Objective& obj, const Vector& x, double f_x,
                                                     const Vector& grad_x, Index s, const SolverConfig& cfg);

/// True when the support of x^k equals gamma or ||grad f(u^k)|| < epsilon_gate.
bool newton_gate(const IndexSet& x_support, const IndexSet& gamma, double grad_norm_u, double epsilon_gate);

struct NewtonStep {
  Vector v;
  double f_v = 0.0;
};

/// Solves H (v_gamma - u_gamma) = -grad_gamma f(u) with v zero off gamma and
/// returns v if f(v) <= f(u) - (sigma/2) ||v - u||^2. Declines (nullopt) when H
/// is not numerically positive definite, the decrease test fails, or f(v) is
/// not finite.
std::optional<Vector> newton_pursuit(const Objective& obj, const Vector& u, const IndexSet& gamma, double sigma);
std::optional<NewtonStep> newton_pursuit(const Objective& obj, const Vector& u, double f_u, const Vector& grad_u,
                                         const IndexSet& gamma, double sigma);

/// Runs the full solver from cfg.x0_policy. Throws std::invalid_argument for
/// s outside [1, n] or an invalid configuration.
SolverResult solve(const Objective& obj, Index s, const SolverConfig& cfg);

}  // namespace sco
