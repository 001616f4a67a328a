#include "sco/core.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <stdexcept>

namespace sco {

IndexSet::IndexSet(std::initializer_list<Index> indices)
    : IndexSet(std::vector<Index>(indices)) {}

IndexSet::IndexSet(std::vector<Index> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) {
    throw std::invalid_argument("IndexSet: negative index");
  }
}

IndexSet IndexSet::support_of(const Vector& x) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) idx.push_back(i);
  }
  IndexSet out;
  out.indices_ = std::move(idx);
  return out;
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
  IndexSet out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(out.indices_));
  return out;
}

IndexSet IndexSet::complement(Index n) const {
  IndexSet out;
  out.indices_.reserve(static_cast<std::size_t>(n) - std::min<std::size_t>(size(), n));
  std::size_t pos = 0;
  for (Index i = 0; i < n; ++i) {
    if (pos < indices_.size() && indices_[pos] == i) {
      ++pos;
    } else {
      out.indices_.push_back(i);
    }
  }
  return out;
}

Index count_nonzero(const Vector& x) {
  return static_cast<Index>((x.array() != 0.0).count());
}

Vector gather(const Vector& x, const IndexSet& set) {
  Vector out(static_cast<Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k) out[static_cast<Index>(k)] = x[set[k]];
  return out;
}

Vector scatter(const Vector& values, const IndexSet& set, Index n) {
  if (values.size() != static_cast<Index>(set.size())) {
    throw std::invalid_argument("scatter: size mismatch");
  }
  Vector out = Vector::Zero(n);
  for (std::size_t k = 0; k < set.size(); ++k) out[set[k]] = values[static_cast<Index>(k)];
  return out;
}

bool all_finite(const Vector& x) { return x.allFinite(); }
bool all_finite(const Matrix& a) { return a.allFinite(); }

NewtonSystem Objective::newton_system(const Vector& u, const IndexSet& gamma,
                                      const Vector& grad_u) const {
  NewtonSystem sys;
  sys.hessian = restricted_hessian(u, gamma);
  sys.rhs = sys.hessian * gather(u, gamma) - gather(grad_u, gamma);
  return sys;
}

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::CS ? "CS" : "QCS";
}

Vector make_start(const X0Policy& policy, Index n) {
  if (std::holds_alternative<AllZeros>(policy)) return Vector::Zero(n);
  if (std::holds_alternative<AllOnes>(policy)) return Vector::Ones(n);
  const auto& custom = std::get<Vector>(policy);
  if (custom.size() != n) throw std::invalid_argument("custom x0 has wrong dimension");
  return custom;
}

void SolverConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(epsilon_gate > 0.0)) throw std::invalid_argument("epsilon_gate must be > 0");
  if (!(epsilon_halt > 0.0)) throw std::invalid_argument("epsilon_halt must be > 0");
  if (k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
}

SolverConfig config_default(ProblemKind kind) {
  SolverConfig cfg;
  cfg.x0_policy = kind == ProblemKind::CS ? X0Policy{AllZeros{}} : X0Policy{AllOnes{}};
  return cfg;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::HaltingMetric: return "halting";
    case Termination::MaxIterations: return "max_iter";
    case Termination::LineSearchStalled: return "line_search_stalled";
    case Termination::Stagnated: return "stagnated";
  }
  return "unknown";
}

double population_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("population_std: empty input");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / n);
}

double halting_metric(std::span<const double> f_history, double grad_norm, int k, int k0) {
  if (k < k0 || f_history.empty()) return grad_norm;
  const std::size_t window = std::min<std::size_t>(f_history.size(), static_cast<std::size_t>(k0) + 1);
  return std::max(population_std(f_history.last(window)), grad_norm);
}

}  // namespace sco
