#include "sco/objectives.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sco {
namespace {

// A * x, walking only the nonzero columns when x is sparse.
Vector apply(const Matrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch");
  const Index nnz = count_nonzero(x);
  if (4 * nnz > a.cols()) return a * x;
  Vector out = Vector::Zero(a.rows());
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) out.noalias() += x[j] * a.col(j);
  }
  return out;
}

Matrix columns(const Matrix& a, const IndexSet& set) {
  Matrix out(a.rows(), static_cast<Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] >= a.cols()) throw std::invalid_argument("index out of range");
    out.col(static_cast<Index>(k)) = a.col(set[k]);
  }
  return out;
}

Matrix symmetrized(const Matrix& h) { return 0.5 * (h + h.transpose()); }

void check_data(const Matrix& a, const Vector& b, const char* what) {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument(std::string(what) + ": empty matrix");
  if (b.size() != a.rows()) throw std::invalid_argument(std::string(what) + ": b length differs from row count");
  if (!a.allFinite() || !b.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace

CsProblem::CsProblem(Matrix a_in, Vector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
  check_data(a, b, "CsProblem");
}

QcsProblem::QcsProblem(Matrix rows_in, Vector b_in) : rows(std::move(rows_in)), b(std::move(b_in)) {
  check_data(rows, b, "QcsProblem");
}

double cs_value(const CsProblem& p, const Vector& x) {
  return 0.5 * (apply(p.a, x) - p.b).squaredNorm();
}

Vector cs_gradient(const CsProblem& p, const Vector& x) {
  const Vector r = apply(p.a, x) - p.b;
  return p.a.transpose() * r;
}

Matrix cs_restricted_hessian(const CsProblem& p, const IndexSet& gamma) {
  const Matrix block = columns(p.a, gamma);
  return symmetrized(block.transpose() * block);
}

Vector cs_newton_rhs(const CsProblem& p, const IndexSet& gamma) {
  return columns(p.a, gamma).transpose() * p.b;
}

NewtonSystem CsObjective::newton_system(const Vector&, const IndexSet& gamma, const Vector&) const {
  const Matrix block = columns(p_->a, gamma);
  return {symmetrized(block.transpose() * block), block.transpose() * p_->b};
}

double qcs_value(const QcsProblem& p, const Vector& x) {
  const Vector t = apply(p.rows, x);
  const double m = static_cast<double>(p.measurements());
  return (t.array().square() - p.b.array()).square().sum() / (4.0 * m);
}

Vector qcs_gradient(const QcsProblem& p, const Vector& x) {
  const Vector t = apply(p.rows, x);
  const double m = static_cast<double>(p.measurements());
  const Vector w = (t.array().square() - p.b.array()) * t.array();
  return p.rows.transpose() * w / m;
}

Matrix qcs_restricted_hessian(const QcsProblem& p, const Vector& x, const IndexSet& gamma) {
  const Vector t = apply(p.rows, x);
  const double m = static_cast<double>(p.measurements());
  const Vector w = (3.0 * t.array().square() - p.b.array()) / m;
  const Matrix block = columns(p.rows, gamma);
  return symmetrized(block.transpose() * w.asDiagonal() * block);
}

LeastSquaresResult restricted_least_squares(const CsProblem& p, const IndexSet& support) {
  LeastSquaresResult out;
  out.z = Vector::Zero(p.cols());
  if (support.empty()) return out;
  const Matrix block = columns(p.a, support);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(block);
  out.rank = cod.rank();
  out.rank_deficient = out.rank < block.cols();
  const Vector coef = cod.solve(p.b);
  for (std::size_t k = 0; k < support.size(); ++k) out.z[support[k]] = coef[static_cast<Index>(k)];
  return out;
}

double compute_lambda_s(const CsProblem& p, Index s) {
  const Index n = p.cols();
  if (s < 1 || s > n) throw std::invalid_argument("compute_lambda_s: need 1 <= s <= n");
  // C(n, s) with early exit once past the guard.
  constexpr double kGuard = 1e6;
  double count = 1.0;
  for (Index i = 1; i <= s; ++i) {
    count = count * static_cast<double>(n - s + i) / static_cast<double>(i);
    if (count > kGuard * 1.0000001) {
      throw std::invalid_argument("compute_lambda_s: more than 1e6 supports; sample supports instead");
    }
  }

  const Matrix gram = p.a.transpose() * p.a;
  std::vector<Index> pick(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = i;
  double best = std::numeric_limits<double>::infinity();
  Matrix sub(s, s);
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  while (true) {
    for (Index r = 0; r < s; ++r) {
      for (Index c = 0; c < s; ++c) sub(r, c) = gram(pick[r], pick[c]);
    }
    eig.compute(sub, Eigen::EigenvaluesOnly);
    best = std::min(best, eig.eigenvalues()[0]);
    // Next combination in lexicographic order.
    Index i = s - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return std::max(best, 0.0);
}

double gram_lambda_max(const Matrix& a, int iterations) {
  Vector v = Vector::Ones(a.cols()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Vector w = a.transpose() * (a * v);
    lambda = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return lambda;
}

}  // namespace sco
