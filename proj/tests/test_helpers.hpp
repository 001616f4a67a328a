#pragma once

// Small builders and brute-force oracles shared by the unit tests.

#include "sco/core.hpp"
#include "sco/rng.hpp"

#include <functional>
#include <vector>

namespace sco::test {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  CounterStream rng(seed, StreamPurpose::Matrix);
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.normal();
  return a;
}

inline Vector random_uniform(Index n, double lo, double hi, std::uint64_t seed) {
  CounterStream rng(seed, StreamPurpose::Values);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.uniform();
  return v;
}

/// Calls fn on every size-k subset of {0..n-1}, in lexicographic order.
inline void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& fn) {
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k == 0 || k > n) return;
  while (true) {
    fn(idx);
    Index i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Quadratic f(x) = 1/2 ||x - c||^2, the simplest separable objective.
class ShiftedQuadratic final : public Objective {
 public:
  explicit ShiftedQuadratic(Vector c) : c_(std::move(c)) {}
  Index dimension() const override { return c_.size(); }
  double value(const Vector& x) const override { return 0.5 * (x - c_).squaredNorm(); }
  Vector gradient(const Vector& x) const override { return x - c_; }
  Matrix restricted_hessian(const Vector&, const IndexSet& g) const override {
    return Matrix::Identity(static_cast<Index>(g.size()), static_cast<Index>(g.size()));
  }

 private:
  Vector c_;
};

}  // namespace sco::test
