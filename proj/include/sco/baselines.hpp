#pragma once

// Classical hard-thresholding solvers for compressive sensing: IHT, NIHT, HTP,
// CoSaMP and SP. All start from x = 0 and share one stopping rule:
// ||A x - b|| < residual_tol * ||b||, max_iter, or `stall_window` consecutive
// iterations without movement.

#include "sco/core.hpp"
#include "sco/objectives.hpp"

#include <optional>
#include <string_view>

namespace sco {

enum class BaselineAlgorithm { IHT, NIHT, HTP, CoSaMP, SP };

std::string_view to_string(BaselineAlgorithm alg);

struct BaselineConfig {
  BaselineAlgorithm algorithm = BaselineAlgorithm::IHT;
  std::optional<double> step_mu;  // fixed step for IHT/HTP; default 1/lambda_max(A^T A)
  int max_iter = 1000;
  double residual_tol = 1e-8;
  int stall_window = 3;

  void validate() const;
};

BaselineConfig baseline_default(BaselineAlgorithm alg);

SolverResult iht_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);
SolverResult niht_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);
SolverResult htp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);
SolverResult cosamp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);
SolverResult sp_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);

/// Dispatches on cfg.algorithm.
SolverResult baseline_solve(const CsProblem& p, Index s, const BaselineConfig& cfg);

/// The NIHT step length ||g_T||^2 / ||A_{:T} g_T||^2 for a (negative)
/// gradient g and working set T. Returns 0 when A_{:T} g_T vanishes.
double niht_step(const Matrix& a, const Vector& g, const IndexSet& working_set);

}  // namespace sco
