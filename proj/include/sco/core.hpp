#pragma once

// Shared numeric types, the objective contract, solver configuration and the
// halting metric used by every solver in the library.

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace sco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Sorted, duplicate-free set of zero-based coordinates.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<Index> indices);
  explicit IndexSet(std::vector<Index> indices);

  /// Positions of the nonzero entries of `x`.
  static IndexSet support_of(const Vector& x);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(Index i) const;
  Index operator[](std::size_t k) const { return indices_[k]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<Index>& indices() const { return indices_; }

  IndexSet set_union(const IndexSet& other) const;
  /// Indices in [0, n) that are not in this set.
  IndexSet complement(Index n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> indices_;
};

/// Number of nonzero entries.
Index count_nonzero(const Vector& x);

/// Entries of `x` at `set`, in set order.
Vector gather(const Vector& x, const IndexSet& set);
/// Length-n vector with `values` placed at `set` and zeros elsewhere.
Vector scatter(const Vector& values, const IndexSet& set, Index n);

bool all_finite(const Vector& x);
bool all_finite(const Matrix& a);

/// Linear system H * v_gamma = rhs whose solution is the Newton point on gamma.
struct NewtonSystem {
  Matrix hessian;
  Vector rhs;
};

/// Smooth objective f: R^n -> R. Implementations are immutable and may be
/// shared read-only between threads.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  /// Symmetric |gamma| x |gamma| block of the Hessian at x.
  virtual Matrix restricted_hessian(const Vector& x, const IndexSet& gamma) const = 0;

  /// Newton system on gamma at u. The default uses H = restricted_hessian(u, gamma)
  /// and rhs = H u_gamma - grad_gamma; quadratics may supply a closed form.
  virtual NewtonSystem newton_system(const Vector& u, const IndexSet& gamma, const Vector& grad_u) const;
};

enum class ProblemKind { CS, QCS };

std::string_view to_string(ProblemKind kind);

struct AllZeros {};
struct AllOnes {};
using X0Policy = std::variant<AllZeros, AllOnes, Vector>;

/// Starting point of length n selected by `policy`.
Vector make_start(const X0Policy& policy, Index n);

struct SolverConfig {
  double tau = 5.0;             // initial step scale
  double sigma = 1e-4;          // sufficient-decrease constant
  double gamma = 0.5;           // backtracking factor
  double epsilon_gate = 0.01;   // Newton gate on the gradient norm
  double epsilon_halt = 1e-5;   // halting tolerance on pi_k
  int k0 = 5;                   // standard-deviation window
  int max_iter = 5000;
  int max_backtracks = 50;
  X0Policy x0_policy = AllZeros{};

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

SolverConfig config_default(ProblemKind kind);

enum class Termination { HaltingMetric, MaxIterations, LineSearchStalled, Stagnated };

std::string_view to_string(Termination t);

struct IterationRecord {
  int k = 0;
  double alpha_k = 0.0;       // accepted step size tau * gamma^q_k
  int q_k = 0;                // backtrack count
  IndexSet gamma_k;
  bool took_newton = false;
  double f_value = 0.0;       // f(x^{k+1})
  double pi_k = 0.0;          // halting metric at x^{k+1}
  double f_gradient_step = 0.0;  // f(u^k)
  double newton_step_sq = 0.0;   // ||v^k - u^k||^2 when the Newton step was taken
  double step_sq = 0.0;          // ||x^{k+1} - x^k||^2
};

struct SolverResult {
  Vector x_final;
  IndexSet support;
  std::vector<double> f_trace;  // f(x^0), f(x^1), ...
  std::vector<IterationRecord> records;
  int iterations = 0;
  int newton_steps_taken = 0;
  Termination termination = Termination::MaxIterations;
  double stationarity_residual = 0.0;
};

/// sqrt((1/N) sum (v_i - mean)^2). Throws on empty input.
double population_std(std::span<const double> values);

/// pi_k: the gradient norm while k < k0, afterwards the larger of the gradient
/// norm and the population std of f_k, ..., f_{k-k0}. `f_history` holds
/// f_0, ..., f_k.
double halting_metric(std::span<const double> f_history, double grad_norm, int k, int k0);

}  // namespace sco
