#pragma once

#include "sco/core.hpp"

namespace sco {

struct ThresholdResult {
  Vector vector;    // zero outside `support`
  IndexSet support;
};

/// Keeps the s largest-magnitude entries of x and zeroes the rest. Ties are
/// broken by the smaller index. Zero entries are never retained, so the
/// support is smaller than s when x has fewer than s nonzeros.
/// Throws std::invalid_argument unless 1 <= s <= n.
ThresholdResult hard_threshold(const Vector& x, Index s);

/// Indices of the `count` largest |x_i|, restricted to `candidates` when
/// given (ties by smaller index). Returned sorted.
IndexSet top_magnitudes(const Vector& x, Index count);
IndexSet top_magnitudes(const Vector& x, Index count, const IndexSet& candidates);

/// Working set of size exactly s containing supp(u). When u has fewer than s
/// nonzeros the remaining slots go to the off-support coordinates with the
/// largest |grad_i|.
IndexSet choose_gamma(const Vector& u, const Vector& grad, Index s);

/// The s-th largest entry of |x|.
double sth_largest_magnitude(const Vector& x, Index s);

/// Violation of alpha-stationarity at an s-sparse x. Zero exactly when
/// x lies in Pi_s(x - alpha * grad f(x)).
double alpha_stationarity_residual(const Objective& obj, const Vector& x, Index s, double alpha);

/// Same as above with the gradient supplied by the caller.
double alpha_stationarity_residual(const Vector& x, const Vector& grad, Index s, double alpha);

}  // namespace sco
