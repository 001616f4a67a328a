#include "sco/baselines.hpp"

#include "sco/bench.hpp"
#include "sco/thresholding.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

using namespace sco;
using sco::test::vec;

namespace {

const BaselineAlgorithm kAll[] = {BaselineAlgorithm::IHT, BaselineAlgorithm::NIHT, BaselineAlgorithm::HTP,
                                  BaselineAlgorithm::CoSaMP, BaselineAlgorithm::SP};

int successes(BaselineAlgorithm alg, Index m, Index n, Index s, int trials, std::optional<double> mu = {}) {
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = gen_gaussian_instance(m, n, s, 1 + static_cast<std::uint64_t>(t));
    BaselineConfig cfg = baseline_default(alg);
    cfg.step_mu = mu;
    const SolverResult r = baseline_solve(inst.cs(), s, cfg);
    ok += relative_error(r.x_final, inst.x_star) < kSuccessThreshold;
  }
  return ok;
}

}  // namespace

TEST(Baselines, Names) {
  EXPECT_EQ(to_string(BaselineAlgorithm::IHT), "iht");
  EXPECT_EQ(to_string(BaselineAlgorithm::CoSaMP), "cosamp");
  EXPECT_EQ(to_string(BaselineAlgorithm::SP), "sp");
}

TEST(Baselines, ConfigValidation) {
  BaselineConfig cfg;
  cfg.step_mu = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.step_mu.reset();
  cfg.max_iter = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_NO_THROW(baseline_default(BaselineAlgorithm::SP).validate());
}

TEST(Baselines, IdentityDesignWithinTwoIterations) {
  const Vector b = vec({0.5, -3, 2, 0.1, -1, 0.7});
  const CsProblem p(Matrix::Identity(6, 6), b);
  for (BaselineAlgorithm alg : kAll) {
    for (Index s : {1, 2, 4}) {
      BaselineConfig cfg = baseline_default(alg);
      cfg.max_iter = 2;
      const SolverResult r = baseline_solve(p, s, cfg);
      EXPECT_LE((r.x_final - hard_threshold(b, s).vector).norm(), 1e-14)
          << to_string(alg) << " s=" << s;
    }
  }
}

TEST(Baselines, IterateIsSparseAndDebiased) {
  const Instance inst = gen_gaussian_instance(40, 120, 6, 9);
  for (BaselineAlgorithm alg : kAll) {
    BaselineConfig cfg = baseline_default(alg);
    cfg.max_iter = 3;  // stop mid-run to inspect a working iterate
    const SolverResult r = baseline_solve(inst.cs(), 6, cfg);
    EXPECT_LE(count_nonzero(r.x_final), 6) << to_string(alg);
    // HTP ends each iteration with the restricted solve itself; CoSaMP and SP
    // prune after debiasing, so only HTP satisfies the normal equations here.
    if (alg == BaselineAlgorithm::HTP) {
      const Vector g = cs_gradient(inst.cs(), r.x_final);
      EXPECT_LE(gather(g, IndexSet::support_of(r.x_final)).lpNorm<Eigen::Infinity>(), 1e-10);
    }
  }
}

TEST(Baselines, NihtStepHandComputed) {
  Matrix a(2, 3);
  a << 1, 0, 1,  //
      0, 2, 1;
  // g_T = (1, 1): ||g_T||^2 = 2, A_T g_T = (1, 2), squared norm 5.
  EXPECT_DOUBLE_EQ(niht_step(a, vec({1, 1, 7}), IndexSet({0, 1})), 0.4);
  EXPECT_EQ(niht_step(a, vec({0, 0, 7}), IndexSet({0, 1})), 0.0);
}

TEST(Baselines, HtpSupportFixedPoint) {
  // Once the support repeats, HTP's restricted solve returns the same point.
  const Instance inst = gen_gaussian_instance(64, 256, 5, 2);
  const SolverResult r = baseline_solve(inst.cs(), 5, baseline_default(BaselineAlgorithm::HTP));
  BaselineConfig again = baseline_default(BaselineAlgorithm::HTP);
  again.max_iter = r.iterations + 5;
  const SolverResult r2 = baseline_solve(inst.cs(), 5, again);
  EXPECT_EQ(r.x_final, r2.x_final);
}

TEST(Baselines, EasyRegimeRecovery) {
  // n=256, m=64, s=5 over 30 seeds.
  EXPECT_GE(successes(BaselineAlgorithm::NIHT, 64, 256, 5, 30), 16);
  EXPECT_GE(successes(BaselineAlgorithm::CoSaMP, 64, 256, 5, 30), 16);
  EXPECT_GE(successes(BaselineAlgorithm::SP, 64, 256, 5, 30), 16);
  // IHT and HTP are checked with a unit step; the default 1/lambda_max step is
  // conservative on normalized Gaussian designs and freezes the support early.
  EXPECT_GE(successes(BaselineAlgorithm::IHT, 64, 256, 5, 30, 1.0), 16);
  EXPECT_GE(successes(BaselineAlgorithm::HTP, 64, 256, 5, 30, 1.0), 16);
}

TEST(Baselines, HopelessRegimeFails) {
  for (BaselineAlgorithm alg : kAll) EXPECT_LE(successes(alg, 20, 100, 20, 5), 1) << to_string(alg);
}

TEST(Baselines, DefaultStepIsInversePowerIterationEstimate) {
  const Instance inst = gen_gaussian_instance(30, 60, 3, 4);
  BaselineConfig explicit_mu = baseline_default(BaselineAlgorithm::IHT);
  explicit_mu.step_mu = 1.0 / gram_lambda_max(inst.cs().a);
  const SolverResult a = baseline_solve(inst.cs(), 3, baseline_default(BaselineAlgorithm::IHT));
  const SolverResult b = baseline_solve(inst.cs(), 3, explicit_mu);
  EXPECT_EQ(a.x_final, b.x_final);
}
