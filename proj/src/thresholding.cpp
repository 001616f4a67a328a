#include "sco/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sco {
namespace {

// Partial selection of the `count` best candidates under (|x_i| desc, i asc).
IndexSet select_largest(const Vector& x, std::vector<Index> pool, Index count) {
  const auto better = [&x](Index a, Index b) {
    const double ma = std::abs(x[a]);
    const double mb = std::abs(x[b]);
    return ma > mb || (ma == mb && a < b);
  };
  if (static_cast<Index>(pool.size()) > count) {
    std::nth_element(pool.begin(), pool.begin() + count, pool.end(), better);
    pool.resize(static_cast<std::size_t>(count));
  }
  return IndexSet(std::move(pool));
}

void check_sparsity(Index s, Index n) {
  if (s < 1 || s > n) {
    throw std::invalid_argument("sparsity level s must satisfy 1 <= s <= n");
  }
}

}  // namespace

ThresholdResult hard_threshold(const Vector& x, Index s) {
  check_sparsity(s, x.size());
  std::vector<Index> nonzero;
  nonzero.reserve(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) nonzero.push_back(i);
  }
  ThresholdResult out;
  out.support = select_largest(x, std::move(nonzero), s);
  out.vector = Vector::Zero(x.size());
  for (Index i : out.support) out.vector[i] = x[i];
  return out;
}

IndexSet top_magnitudes(const Vector& x, Index count) {
  std::vector<Index> all(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return select_largest(x, std::move(all), std::min(count, x.size()));
}

IndexSet top_magnitudes(const Vector& x, Index count, const IndexSet& candidates) {
  return select_largest(x, candidates.indices(), count);
}

IndexSet choose_gamma(const Vector& u, const Vector& grad, Index s) {
  check_sparsity(s, u.size());
  IndexSet support = IndexSet::support_of(u);
  const auto nnz = static_cast<Index>(support.size());
  if (nnz > s) throw std::invalid_argument("choose_gamma: u has more than s nonzeros");
  if (nnz == s) return support;
  const IndexSet padding = top_magnitudes(grad, s - nnz, support.complement(u.size()));
  return support.set_union(padding);
}

double sth_largest_magnitude(const Vector& x, Index s) {
  check_sparsity(s, x.size());
  std::vector<double> mags(x.data(), x.data() + x.size());
  for (double& m : mags) m = std::abs(m);
  std::nth_element(mags.begin(), mags.begin() + (s - 1), mags.end(), std::greater<>());
  return mags[static_cast<std::size_t>(s - 1)];
}

double alpha_stationarity_residual(const Vector& x, const Vector& grad, Index s, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const IndexSet support = IndexSet::support_of(x);
  const auto nnz = static_cast<Index>(support.size());
  if (nnz > s) throw std::invalid_argument("x is not s-sparse");
  if (nnz < s) return grad.lpNorm<Eigen::Infinity>();

  double on_support = 0.0;
  double off_support = 0.0;
  std::size_t pos = 0;
  for (Index i = 0; i < x.size(); ++i) {
    const double g = std::abs(grad[i]);
    if (pos < support.size() && support[pos] == i) {
      on_support = std::max(on_support, g);
      ++pos;
    } else {
      off_support = std::max(off_support, g);
    }
  }
  const double threshold = sth_largest_magnitude(x, s);
  return std::max(on_support, std::max(0.0, alpha * off_support - threshold));
}

double alpha_stationarity_residual(const Objective& obj, const Vector& x, Index s, double alpha) {
  return alpha_stationarity_residual(x, obj.gradient(x), s, alpha);
}

}  // namespace sco
