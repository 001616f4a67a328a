#include "sco/baselines.hpp"

#include "sco/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sco {
namespace {

using Step = std::function<Vector(const Vector&)>;

void check_inputs(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  cfg.validate();
  if (s < 1 || s > p.cols()) throw std::invalid_argument("s must satisfy 1 <= s <= n");
}

double fixed_step(const CsProblem& p, const BaselineConfig& cfg) {
  if (cfg.step_mu) return *cfg.step_mu;
  const double lambda = gram_lambda_max(p.a);
  return lambda > 0.0 ? 1.0 / lambda : 1.0;
}

SolverResult run_iterations(const CsProblem& p, Index s, const BaselineConfig& cfg, double alpha, const Step& step) {
  const Index n = p.cols();
  const double b_norm = p.b.norm();
  Vector x = Vector::Zero(n);

  SolverResult out;
  out.f_trace.push_back(cs_value(p, x));
  out.termination = Termination::MaxIterations;
  int still = 0;
  int k = 0;
  while (k < cfg.max_iter) {
    Vector next = step(x);
    const double moved = (next - x).norm();
    x = std::move(next);
    ++k;
    const double f = cs_value(p, x);
    const double residual = std::sqrt(2.0 * f);
    out.f_trace.push_back(f);
    if (residual < cfg.residual_tol * b_norm) {
      out.termination = Termination::HaltingMetric;
      break;
    }
    still = moved <= 1e-14 * std::max(1.0, x.norm()) ? still + 1 : 0;
    if (still >= cfg.stall_window) {
      out.termination = Termination::Stagnated;
      break;
    }
  }
  out.iterations = k;
  out.support = IndexSet::support_of(x);
  out.stationarity_residual = alpha_stationarity_residual(x, cs_gradient(p, x), s, alpha);
  out.x_final = std::move(x);
  return out;
}

// Conservative step for the stationarity certificate of solvers without a
// fixed step: 1/||A||_F^2 <= 1/lambda_max(A^T A).
double certificate_step(const CsProblem& p) {
  const double fro = p.a.squaredNorm();
  return fro > 0.0 ? 1.0 / fro : 1.0;
}

// CoSaMP and SP differ only in how many gradient entries they merge.
SolverResult pursuit_solve(const CsProblem& p, Index s, const BaselineConfig& cfg, Index merge) {
  check_inputs(p, s, cfg);
  const Index n = p.cols();
  const Index r = std::min(merge, n);
  const Step step = [&](const Vector& x) {
    const Vector g = cs_gradient(p, x);
    const IndexSet omega = hard_threshold(g, r).support;
    const IndexSet merged = omega.set_union(IndexSet::support_of(x));
    const Vector v = restricted_least_squares(p, merged).z;
    return hard_threshold(v, s).vector;
  };
  return run_iterations(p, s, cfg, certificate_step(p), step);
}

}  // namespace

std::string_view to_string(BaselineAlgorithm alg) {
  switch (alg) {
    case BaselineAlgorithm::IHT: return "iht";
    case BaselineAlgorithm::NIHT: return "niht";
    case BaselineAlgorithm::HTP: return "htp";
    case BaselineAlgorithm::CoSaMP: return "cosamp";
    case BaselineAlgorithm::SP: return "sp";
  }
  return "unknown";
}

void BaselineConfig::validate() const {
  if (step_mu && !(*step_mu > 0.0)) throw std::invalid_argument("step_mu must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(residual_tol >= 0.0)) throw std::invalid_argument("residual_tol must be >= 0");
  if (stall_window < 1) throw std::invalid_argument("stall_window must be >= 1");
}

BaselineConfig baseline_default(BaselineAlgorithm alg) {
  BaselineConfig cfg;
  cfg.algorithm = alg;
  return cfg;
}

SolverResult iht_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  check_inputs(p, s, cfg);
  const double mu = fixed_step(p, cfg);
  const Step step = [&](const Vector& x) { return hard_threshold(x - mu * cs_gradient(p, x), s).vector; };
  return run_iterations(p, s, cfg, mu, step);
}

double niht_step(const Matrix& a, const Vector& g, const IndexSet& working_set) {
  double num = 0.0;
  Vector ag = Vector::Zero(a.rows());
  for (Index j : working_set) {
    num += g[j] * g[j];
    ag.noalias() += g[j] * a.col(j);
  }
  const double den = ag.squaredNorm();
  return den > 0.0 ? num / den : 0.0;
}

SolverResult niht_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  check_inputs(p, s, cfg);
  // Shrinkage constant of the step acceptance test.
  constexpr double kC = 0.01;
  constexpr int kMaxHalvings = 50;
  const Step step = [&](const Vector& x) -> Vector {
    const Vector g = p.a.transpose() * (p.b - p.a * x);
    const IndexSet support = IndexSet::support_of(x);
    const IndexSet working = support.empty() ? hard_threshold(g, s).support : support;
    double mu = niht_step(p.a, g, working);
    if (mu == 0.0) return x;
    Vector next = hard_threshold(x + mu * g, s).vector;
    for (int h = 0; h < kMaxHalvings && IndexSet::support_of(next) != support; ++h) {
      const Vector delta = next - x;
      const double denom = (p.a * delta).squaredNorm();
      const double omega = denom > 0.0 ? (1.0 - kC) * delta.squaredNorm() / denom : mu;
      if (mu <= omega) break;
      mu *= 0.5;
      next = hard_threshold(x + mu * g, s).vector;
    }
    return next;
  };
  return run_iterations(p, s, cfg, certificate_step(p), step);
}

SolverResult htp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  check_inputs(p, s, cfg);
  const double mu = fixed_step(p, cfg);
  const Step step = [&](const Vector& x) {
    const IndexSet t = hard_threshold(x - mu * cs_gradient(p, x), s).support;
    return restricted_least_squares(p, t).z;
  };
  return run_iterations(p, s, cfg, mu, step);
}

SolverResult cosamp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  return pursuit_solve(p, s, cfg, 2 * s);
}

SolverResult sp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  return pursuit_solve(p, s, cfg, s);
}

SolverResult baseline_solve(const CsProblem& p, Index s, const BaselineConfig& cfg) {
  switch (cfg.algorithm) {
    case BaselineAlgorithm::IHT: return iht_solve(p, s, cfg);
    case BaselineAlgorithm::NIHT: return niht_solve(p, s, cfg);
    case BaselineAlgorithm::HTP: return htp_solve(p, s, cfg);
    case BaselineAlgorithm::CoSaMP: return cosamp_solve(p, s, cfg);
    case BaselineAlgorithm::SP: return sp_solve(p, s, cfg);
  }
  throw std::invalid_argument("unknown baseline algorithm");
}

}  // namespace sco
