#pragma once

// Compressive-sensing least squares and the quartic quadratic-CS objective.

#include "sco/core.hpp"

namespace sco {

/// f(x) = 1/2 ||A x - b||^2 data.
struct CsProblem {
  Matrix a;  // m x n sensing matrix
  Vector b;  // length m

  CsProblem() = default;
  /// Throws std::invalid_argument on empty, mismatched or non-finite data.
  CsProblem(Matrix a_in, Vector b_in);

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

/// f(x) = 1/(4m) sum_i (<a_i, x>^2 - b_i)^2 data, with a_i the rows of `rows`.
struct QcsProblem {
  Matrix rows;  // m x n, row i is a_i^T
  Vector b;     // length m

  QcsProblem() = default;
  QcsProblem(Matrix rows_in, Vector b_in);

  Index measurements() const { return rows.rows(); }
  Index cols() const { return rows.cols(); }
};

double cs_value(const CsProblem& p, const Vector& x);
Vector cs_gradient(const CsProblem& p, const Vector& x);
/// A_{:gamma}^T A_{:gamma}; independent of x.
Matrix cs_restricted_hessian(const CsProblem& p, const IndexSet& gamma);
/// A_{:gamma}^T b, the right-hand side of the closed-form CS Newton system
/// H v_gamma = A_{:gamma}^T b.
Vector cs_newton_rhs(const CsProblem& p, const IndexSet& gamma);

double qcs_value(const QcsProblem& p, const Vector& x);
/// (1/m) sum_i (t_i^2 - b_i) t_i a_i with t_i = <a_i, x>.
Vector qcs_gradient(const QcsProblem& p, const Vector& x);
/// (1/m) sum_i (3 t_i^2 - b_i) a_{i,gamma} a_{i,gamma}^T.
Matrix qcs_restricted_hessian(const QcsProblem& p, const Vector& x, const IndexSet& gamma);

struct LeastSquaresResult {
  Vector z;                    // length n, zero off the support set
  Index rank = 0;              // numerical rank of A_{:T}
  bool rank_deficient = false; // true when z is the minimum-norm solution
};

/// argmin 1/2 ||A z - b||^2 over supp(z) within T, via an orthogonal
/// factorization of A_{:T}. Rank-deficient blocks yield the minimum-norm
/// solution and set `rank_deficient`.
LeastSquaresResult restricted_least_squares(const CsProblem& p, const IndexSet& support);

/// lambda_s = min over |T| = s of lambda_min(A_{:T}^T A_{:T}), by exhaustive
/// enumeration. Throws std::invalid_argument when C(n, s) exceeds 1e6.
double compute_lambda_s(const CsProblem& p, Index s);

/// Largest eigenvalue of A^T A estimated by power iteration from the
/// normalized all-ones vector.
double gram_lambda_max(const Matrix& a, int iterations = 50);

/// Non-owning view: the problem must outlive the objective.
class CsObjective final : public Objective {
 public:
  explicit CsObjective(const CsProblem& problem) : p_(&problem) {}

  Index dimension() const override { return p_->cols(); }
  double value(const Vector& x) const override { return cs_value(*p_, x); }
  Vector gradient(const Vector& x) const override { return cs_gradient(*p_, x); }
  Matrix restricted_hessian(const Vector&, const IndexSet& gamma) const override {
    return cs_restricted_hessian(*p_, gamma);
  }
  NewtonSystem newton_system(const Vector& u, const IndexSet& gamma, const Vector& grad_u) const override;

  const CsProblem& problem() const { return *p_; }

 private:
  const CsProblem* p_;
};

/// Non-owning view: the problem must outlive the objective.
class QcsObjective final : public Objective {
 public:
  explicit QcsObjective(const QcsProblem& problem) : p_(&problem) {}

  Index dimension() const override { return p_->cols(); }
  double value(const Vector& x) const override { return qcs_value(*p_, x); }
  Vector gradient(const Vector& x) const override { return qcs_gradient(*p_, x); }
  Matrix restricted_hessian(const Vector& x, const IndexSet& gamma) const override {
    return qcs_restricted_hessian(*p_, x, gamma);
  }

  const QcsProblem& problem() const { return *p_; }

 private:
  const QcsProblem* p_;
};

}  // namespace sco
