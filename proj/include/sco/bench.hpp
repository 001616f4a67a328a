#pragma once

// Synthetic instance generators, recovery metrics and the experiment drivers
// (success rate vs. sparsity, success rate vs. sample size, scaling, QCS).

#include "sco/core.hpp"
#include "sco/objectives.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sco {

enum class Algorithm { GPNP, IHT, NIHT, HTP, CoSaMP, SP };

std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

struct Instance {
  ProblemKind kind = ProblemKind::CS;
  std::variant<CsProblem, QcsProblem> problem;
  Vector x_star;
  std::uint64_t seed = 0;
  Index m = 0;
  Index n = 0;
  Index s = 0;

  const CsProblem& cs() const { return std::get<CsProblem>(problem); }
  const QcsProblem& qcs() const { return std::get<QcsProblem>(problem); }

  /// FNV-1a over kind, dimensions and the raw bytes of the data and x_star.
  std::uint64_t hash() const;
};

/// Column-normalized Gaussian A, s standard-normal nonzeros at uniformly
/// random positions, b = A x*. Fully determined by `seed`.
Instance gen_gaussian_instance(Index m, Index n, Index s, std::uint64_t seed);
/// Gaussian rows a_i, x* as above, b_i = <a_i, x*>^2.
Instance gen_qcs_instance(Index m, Index n, Index s, std::uint64_t seed);

/// ||x - x*|| / ||x*||; throws std::invalid_argument when x* = 0.
double relative_error(const Vector& x, const Vector& x_star);
/// min(||x - x*||, ||x + x*||) / ||x*||, for objectives invariant under x -> -x.
double sign_invariant_relative_error(const Vector& x, const Vector& x_star);

/// Returned by psnr when x matches x* (||x - x*||^2 < 1e-300).
inline constexpr double kPsnrCap = 3100.0;
/// 10 log10(n / ||x - x*||^2).
double psnr(const Vector& x, const Vector& x_star, Index n);

/// A recovery succeeds when ReEr < 1e-4.
inline constexpr double kSuccessThreshold = 1e-4;

struct TrialResult {
  std::string algorithm;
  Index m = 0;
  Index n = 0;
  Index s = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double re_er = 0.0;
  double psnr = 0.0;
  double f_final = 0.0;
  int iterations = 0;
  int newton_steps = 0;
  double wall_time_seconds = 0.0;
  bool success = false;
  std::string termination;
  std::uint64_t instance_hash = 0;
};

/// Solves `inst` with `alg` under default settings and scores the output.
/// Baselines accept CS instances only.
TrialResult run_trial(Algorithm alg, const Instance& inst, int trial = 0);

/// Worker count: GPNP_THREADS when set to a positive integer, else the number
/// of logical cores.
int default_threads();

struct BenchOptions {
  int threads = 1;
};

/// Rows ordered by (s, algorithm, trial). Trial t uses seed base_seed + t and
/// every algorithm in a cell sees the same instance.
std::vector<TrialResult> run_success_rate(const std::vector<Algorithm>& algorithms, Index m, Index n,
                                          const std::vector<Index>& s_values, int trials, std::uint64_t base_seed,
                                          const BenchOptions& opts = {});

/// Success rates over m = floor(frac * n). Rows ordered by (m, algorithm, trial).
std::vector<TrialResult> run_sample_sweep(const std::vector<Algorithm>& algorithms, Index n, Index s,
                                          const std::vector<double>& m_fracs, int trials, std::uint64_t base_seed,
                                          const BenchOptions& opts = {});

struct ProblemSize {
  Index m = 0;
  Index n = 0;
  Index s = 0;
};

std::vector<TrialResult> run_scaling(const std::vector<Algorithm>& algorithms, const std::vector<ProblemSize>& sizes,
                                     int trials, std::uint64_t base_seed, const BenchOptions& opts = {});

struct QcsBenchPlan {
  Index grid_m = 80;
  Index grid_n = 120;
  std::vector<Index> grid_s = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  /// Scaling runs use m = 0.8 n and s = max(1, 0.01 n).
  std::vector<Index> scaling_n;
};

/// GPNP on QCS instances: the success grid followed by the scaling runs.
std::vector<TrialResult> run_qcs(const QcsBenchPlan& plan, int trials, std::uint64_t base_seed,
                                 const BenchOptions& opts = {});

struct CellSummary {
  std::string algorithm;
  Index m = 0;
  Index n = 0;
  Index s = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_re_er = 0.0;
  double mean_time = 0.0;
  double mean_f_success = 0.0;  // mean f_final over successful trials, NaN if none
};

/// One summary per (algorithm, m, n, s) cell, in first-appearance order.
std::vector<CellSummary> summarize(const std::vector<TrialResult>& rows);

}  // namespace sco
