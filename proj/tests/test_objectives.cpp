#include "sco/objectives.hpp"

#include "test_helpers.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

using namespace sco;
using sco::test::vec;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CsProblem identity_problem() { return CsProblem(Matrix::Identity(2, 2), vec({1, 2})); }

}  // namespace

TEST(CsObjective, WorkedValues) {
  EXPECT_DOUBLE_EQ(cs_value(identity_problem(), vec({0, 0})), 2.5);
  const CsProblem p(m2(1, 2, 0, 1), vec({0, 0}));
  EXPECT_DOUBLE_EQ(cs_value(p, vec({1, 1})), 5.0);
  EXPECT_EQ(cs_gradient(p, vec({1, 1})), vec({3, 7}));
  EXPECT_EQ(cs_gradient(identity_problem(), vec({0, 0})), vec({-1, -2}));
  EXPECT_EQ(cs_gradient(identity_problem(), vec({1, 2})), vec({0, 0}));
  EXPECT_DOUBLE_EQ(cs_value(identity_problem(), vec({1, 2})), 0.0);
}

TEST(CsObjective, RestrictedHessianAndRhs) {
  const CsProblem p(m2(1, 2, 0, 1), vec({0, 0}));
  EXPECT_EQ(cs_restricted_hessian(p, IndexSet({0, 1})), m2(1, 2, 2, 5));
  EXPECT_EQ(cs_restricted_hessian(identity_problem(), IndexSet({0, 1})), Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(cs_restricted_hessian(p, IndexSet({1}))(0, 0), 5.0);
  EXPECT_EQ(cs_newton_rhs(identity_problem(), IndexSet({1})), vec({2}));
  EXPECT_EQ(cs_newton_rhs(p, IndexSet({0, 1})), vec({0, 0}));
}

TEST(CsObjective, GradientDifferenceIsGramTimesStep) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CsProblem p(test::random_matrix(7, 11, seed), test::random_uniform(7, -1, 1, seed));
    const Vector x = test::random_uniform(11, -1, 1, seed + 100);
    const Vector y = test::random_uniform(11, -1, 1, seed + 200);
    const Vector lhs = cs_gradient(p, x) - cs_gradient(p, y);
    const Vector rhs = p.a.transpose() * (p.a * (x - y));
    EXPECT_LE((lhs - rhs).lpNorm<Eigen::Infinity>(), 1e-12 * (1 + rhs.lpNorm<Eigen::Infinity>()));
  }
}

TEST(CsObjective, NewtonSolveEqualsRestrictedLeastSquares) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CsProblem p(test::random_matrix(12, 20, seed), test::random_uniform(12, -1, 1, seed));
    const IndexSet t({1, 4, 9, 13});
    const Vector v = cs_restricted_hessian(p, t).llt().solve(cs_newton_rhs(p, t));
    const Vector z = gather(restricted_least_squares(p, t).z, t);
    EXPECT_LE((v - z).norm(), 1e-10 * (1 + z.norm()));
  }
}

TEST(CsObjective, FiniteDifferenceGradient) {
  const CsProblem p(test::random_matrix(8, 12, 3), test::random_uniform(8, -1, 1, 3));
  const CsObjective obj(p);
  const Vector x = test::random_uniform(12, -1, 1, 4);
  const Vector g = obj.gradient(x);
  const double h = 1e-6;
  for (Index i = 0; i < 12; ++i) {
    Vector e = Vector::Zero(12);
    e[i] = h;
    const double fd = (obj.value(x + e) - obj.value(x - e)) / (2 * h);
    EXPECT_LE(std::abs(fd - g[i]), 1e-5 * (1 + std::abs(g[i])));
  }
}

TEST(QcsObjective, WorkedValues) {
  const QcsProblem p(Matrix::Ones(1, 1), vec({1}));
  EXPECT_DOUBLE_EQ(qcs_value(p, vec({2})), 2.25);
  EXPECT_DOUBLE_EQ(qcs_gradient(p, vec({2}))[0], 6.0);
  EXPECT_DOUBLE_EQ(qcs_restricted_hessian(p, vec({2}), IndexSet({0}))(0, 0), 11.0);
}

TEST(QcsObjective, ExactDataAndOrigin) {
  const Matrix rows = test::random_matrix(9, 6, 7);
  const Vector xs = vec({0, 1.5, 0, -0.5, 0, 0});
  const Vector b = (rows * xs).array().square().matrix();
  const QcsProblem p(rows, b);
  EXPECT_NEAR(qcs_value(p, xs), 0.0, 1e-24);
  EXPECT_LE(qcs_gradient(p, xs).norm(), 1e-12);
  EXPECT_DOUBLE_EQ(qcs_value(p, Vector::Zero(6)), b.squaredNorm() / (4.0 * 9));
  EXPECT_EQ(qcs_gradient(p, Vector::Zero(6)), Vector::Zero(6));

  const IndexSet g({0, 1, 3});
  const Eigen::SelfAdjointEigenSolver<Matrix> at_origin(qcs_restricted_hessian(p, Vector::Zero(6), g));
  EXPECT_LT(at_origin.eigenvalues().maxCoeff(), 0.0);
  const Eigen::SelfAdjointEigenSolver<Matrix> at_truth(qcs_restricted_hessian(p, xs, g));
  EXPECT_GE(at_truth.eigenvalues().minCoeff(), -1e-12);
}

// Finite-difference oracle for the derived QCS formulas.
TEST(QcsObjective, FiniteDifferenceGradientAndHessian) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Index n = 5 + static_cast<Index>(seed);  // up to 15
    const Index m = 2 * n;
    const QcsProblem p(test::random_matrix(m, n, seed), test::random_uniform(m, 0, 3, seed));
    const QcsObjective obj(p);
    const Vector x = test::random_uniform(n, -1, 1, seed + 50);
    const Vector g = obj.gradient(x);
    const double h = 1e-6;
    for (Index i = 0; i < n; ++i) {
      Vector e = Vector::Zero(n);
      e[i] = h;
      const double fd = (obj.value(x + e) - obj.value(x - e)) / (2 * h);
      EXPECT_LE(std::abs(fd - g[i]), 1e-5 * (1 + std::abs(g[i]))) << "seed " << seed << " i " << i;
    }
    const IndexSet gamma({0, 2, n - 1});
    const Matrix hess = obj.restricted_hessian(x, gamma);
    EXPECT_LE((hess - hess.transpose()).norm(), 0.0);
    for (std::size_t c = 0; c < gamma.size(); ++c) {
      Vector e = Vector::Zero(n);
      e[gamma[c]] = h;
      const Vector dg = (obj.gradient(x + e) - obj.gradient(x - e)) / (2 * h);
      for (std::size_t r = 0; r < gamma.size(); ++r) {
        const double hv = hess(static_cast<Index>(r), static_cast<Index>(c));
        EXPECT_LE(std::abs(dg[gamma[r]] - hv), 1e-4 * (1 + std::abs(hv)));
      }
    }
  }
}

TEST(RestrictedLeastSquares, WorkedExamples) {
  const auto r = restricted_least_squares(identity_problem(), IndexSet({1}));
  EXPECT_EQ(r.z, vec({0, 2}));
  EXPECT_FALSE(r.rank_deficient);

  Matrix a(3, 2);
  a << 1, 0, 0, 1, 0, 0;
  const auto orth = restricted_least_squares(CsProblem(a, vec({0, 0, 5})), IndexSet({0, 1}));
  EXPECT_LE(orth.z.norm(), 1e-15);
}

TEST(RestrictedLeastSquares, RecoversTruthOnItsSupport) {
  const Matrix a = test::random_matrix(20, 40, 11);
  Vector xs = Vector::Zero(40);
  xs[3] = 1.2;
  xs[17] = -0.4;
  xs[31] = 2.0;
  const CsProblem p(a, a * xs);
  const auto r = restricted_least_squares(p, IndexSet({3, 17, 31}));
  EXPECT_LE((r.z - xs).norm(), 1e-12);
}

TEST(RestrictedLeastSquares, NormalEquationsHold) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const CsProblem p(test::random_matrix(15, 30, seed), test::random_uniform(15, -2, 2, seed));
    const IndexSet t({0, 5, 6, 12, 29});
    const auto r = restricted_least_squares(p, t);
    EXPECT_LE(gather(cs_gradient(p, r.z), t).lpNorm<Eigen::Infinity>(), 1e-10);
    for (Index i : t.complement(30)) EXPECT_EQ(r.z[i], 0.0);
  }
}

TEST(RestrictedLeastSquares, RankDeficientGivesMinimumNorm) {
  Matrix a(2, 2);
  a << 1, 1, 1, 1;
  const auto r = restricted_least_squares(CsProblem(a, vec({2, 2})), IndexSet({0, 1}));
  EXPECT_TRUE(r.rank_deficient);
  EXPECT_EQ(r.rank, 1);
  EXPECT_NEAR(r.z[0], 1.0, 1e-12);
  EXPECT_NEAR(r.z[1], 1.0, 1e-12);
}

TEST(LambdaS, WorkedExamples) {
  EXPECT_NEAR(compute_lambda_s(CsProblem(Matrix::Identity(5, 5), Vector::Zero(5)), 3), 1.0, 1e-14);
  Matrix a = test::random_matrix(4, 5, 2);
  a.col(3) = a.col(1);
  EXPECT_NEAR(compute_lambda_s(CsProblem(a, Vector::Zero(4)), 2), 0.0, 1e-12);
  EXPECT_THROW(compute_lambda_s(CsProblem(Matrix::Identity(60, 60), Vector::Zero(60)), 6), std::invalid_argument);
}

// Oracle: singular values of every column subset (an SVD route independent of
// the Gram eigen-solve) give both lambda_s and the restricted isometry constant.
TEST(LambdaS, MatchesSvdEnumerationAndRipBound) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix a = test::random_matrix(6, 8, seed);
    a.colwise().normalize();
    const CsProblem p(a, Vector::Zero(6));
    for (Index s = 1; s <= 3; ++s) {
      double lam = std::numeric_limits<double>::infinity();
      double delta = 0.0;
      test::for_each_subset(8, s, [&](const std::vector<Index>& t) {
        Matrix sub(6, s);
        for (Index j = 0; j < s; ++j) sub.col(j) = a.col(t[static_cast<std::size_t>(j)]);
        const Eigen::JacobiSVD<Matrix> svd(sub);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(s - 1);
        lam = std::min(lam, smin * smin);
        delta = std::max({delta, 1 - smin * smin, smax * smax - 1});
      });
      const double got = compute_lambda_s(p, s);
      EXPECT_NEAR(got, lam, 1e-10);
      EXPECT_GE(got, 1 - delta - 1e-12);
    }
  }
}

TEST(GramLambdaMax, MatchesEigenSolver) {
  const Matrix a = test::random_matrix(30, 50, 5);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a.transpose() * a);
  const double exact = eig.eigenvalues().maxCoeff();
  const double est = gram_lambda_max(a);
  EXPECT_LE(est, exact * (1 + 1e-12));
  EXPECT_GE(est, 0.95 * exact);
}

TEST(Problems, RejectBadData) {
  EXPECT_THROW(CsProblem(Matrix::Identity(2, 2), vec({1})), std::invalid_argument);
  EXPECT_THROW(CsProblem(Matrix::Identity(2, 2), vec({1, std::nan("")})), std::invalid_argument);
  EXPECT_THROW(QcsProblem(Matrix(0, 3), Vector(0)), std::invalid_argument);
}
