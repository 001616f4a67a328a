#include "sco/gpnp.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sco {
namespace {

// Relative pivot floor for the Cholesky factorization of the Newton matrix.
constexpr double kPivotFloor = 1e-12;

std::optional<Vector> solve_spd(const Matrix& h, const Vector& rhs) {
  if (h.rows() == 0) return Vector(0);
  const double max_diag = h.diagonal().maxCoeff();
  if (!(max_diag > 0.0) || !std::isfinite(max_diag)) return std::nullopt;
  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const auto diag = llt.matrixLLT().diagonal();
  for (Index i = 0; i < diag.size(); ++i) {
    if (!(diag[i] * diag[i] > kPivotFloor * max_diag)) return std::nullopt;
  }
  return Vector(llt.solve(rhs));
}

}  // namespace

std::optional<GradientStep> gradient_projection_step(const Objective& obj, const Vector& x, double f_x,
                                                     const Vector& grad_x, Index s, const SolverConfig& cfg) {
  double alpha = cfg.tau;
  for (int q = 0; q <= cfg.max_backtracks; ++q, alpha *= cfg.gamma) {
    ThresholdResult u = hard_threshold(x - alpha * grad_x, s);
    const double f_u = obj.value(u.vector);
    if (std::isfinite(f_u) && f_u <= f_x - 0.5 * cfg.sigma * (u.vector - x).squaredNorm()) {
      return GradientStep{std::move(u), alpha, q, f_u};
    }
  }
  return std::nullopt;
}

std::optional<GradientStep> gradient_projection_step(const Objective& obj, const Vector& x, Index s,
                                                     const SolverConfig& cfg) {
  return gradient_projection_step(obj, x, obj.value(x), obj.gradient(x), s, cfg);
}

bool newton_gate(const IndexSet& x_support, const IndexSet& gamma, double grad_norm_u, double epsilon_gate) {
  return x_support == gamma || grad_norm_u < epsilon_gate;
}

std::optional<NewtonStep> newton_pursuit(const Objective& obj, const Vector& u, double f_u, const Vector& grad_u,
                                         const IndexSet& gamma, double sigma) {
  const NewtonSystem sys = obj.newton_system(u, gamma, grad_u);
  const std::optional<Vector> v_gamma = solve_spd(sys.hessian, sys.rhs);
  if (!v_gamma || !v_gamma->allFinite()) return std::nullopt;
  NewtonStep step;
  step.v = scatter(*v_gamma, gamma, u.size());
  step.f_v = obj.value(step.v);
  if (!std::isfinite(step.f_v)) return std::nullopt;
  if (step.f_v > f_u - 0.5 * sigma * (step.v - u).squaredNorm()) return std::nullopt;
  return step;
}

std::optional<Vector> newton_pursuit(const Objective& obj, const Vector& u, const IndexSet& gamma, double sigma) {
  auto step = newton_pursuit(obj, u, obj.value(u), obj.gradient(u), gamma, sigma);
  if (!step) return std::nullopt;
  return std::move(step->v);
}

SolverResult solve(const Objective& obj, Index s, const SolverConfig& cfg) {
  cfg.validate();
  const Index n = obj.dimension();
  if (s < 1 || s > n) throw std::invalid_argument("s must satisfy 1 <= s <= n");

  Vector x = make_start(cfg.x0_policy, n);
  double f = obj.value(x);
  Vector grad = obj.gradient(x);
  double pi = grad.norm();

  SolverResult out;
  out.f_trace.push_back(f);
  double last_alpha = cfg.tau;
  out.termination = Termination::MaxIterations;

  int k = 0;
  while (pi > cfg.epsilon_halt && k < cfg.max_iter) {
    auto step = gradient_projection_step(obj, x, f, grad, s, cfg);
    if (!step) {
      out.termination = Termination::LineSearchStalled;
      break;
    }
    last_alpha = step->alpha;

    IterationRecord rec;
    rec.k = k;
    rec.alpha_k = step->alpha;
    rec.q_k = step->q;
    rec.f_gradient_step = step->f_u;

    Vector grad_u = obj.gradient(step->u.vector);
    rec.gamma_k = choose_gamma(step->u.vector, grad_u, s);

    Vector x_next = std::move(step->u.vector);
    double f_next = step->f_u;
    Vector grad_next = std::move(grad_u);

    if (newton_gate(IndexSet::support_of(x), rec.gamma_k, grad_next.norm(), cfg.epsilon_gate)) {
      if (auto newton = newton_pursuit(obj, x_next, f_next, grad_next, rec.gamma_k, cfg.sigma)) {
        rec.took_newton = true;
        rec.newton_step_sq = (newton->v - x_next).squaredNorm();
        x_next = std::move(newton->v);
        f_next = newton->f_v;
        grad_next = obj.gradient(x_next);
        ++out.newton_steps_taken;
      }
    }

    rec.step_sq = (x_next - x).squaredNorm();
    x = std::move(x_next);
    f = f_next;
    grad = std::move(grad_next);
    out.f_trace.push_back(f);
    ++k;
    pi = halting_metric(out.f_trace, grad.norm(), k, cfg.k0);
    rec.f_value = f;
    rec.pi_k = pi;
    out.records.push_back(std::move(rec));
  }
  if (pi <= cfg.epsilon_halt) out.termination = Termination::HaltingMetric;

  out.iterations = k;
  out.support = IndexSet::support_of(x);
  out.stationarity_residual = static_cast<Index>(out.support.size()) <= s
                                  ? alpha_stationarity_residual(x, grad, s, std::min(cfg.tau, last_alpha))
                                  : std::numeric_limits<double>::infinity();
  out.x_final = std::move(x);
  return out;
}

}  // namespace sco
