#include "sco/bench.hpp"

#include "sco/baselines.hpp"
#include "sco/gpnp.hpp"
#include "sco/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace sco {
namespace {

void check_dims(Index m, Index n, Index s) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (s < 1 || s > n) throw std::invalid_argument("s must satisfy 1 <= s <= n");
}

Vector sparse_signal(Index n, Index s, std::uint64_t seed) {
  CounterStream where(seed, StreamPurpose::Support);
  CounterStream what(seed, StreamPurpose::Values);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Vector x = Vector::Zero(n);
  for (Index i = 0; i < s; ++i) {
    const auto j = i + static_cast<Index>(where.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    double v = what.normal();
    while (v == 0.0) v = what.normal();
    x[perm[static_cast<std::size_t>(i)]] = v;
  }
  return x;
}

Matrix gaussian_matrix(Index m, Index n, std::uint64_t seed) {
  CounterStream stream(seed, StreamPurpose::Matrix);
  Matrix a(m, n);
  // Column-major draw order.
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) a(i, j) = stream.normal();
  }
  return a;
}

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
}

template <typename T>
void fnv_value(std::uint64_t& h, T v) {
  fnv_bytes(h, &v, sizeof(v));
}

void fnv_matrix(std::uint64_t& h, const Matrix& a) {
  fnv_bytes(h, a.data(), static_cast<std::size_t>(a.size()) * sizeof(double));
}

// Runs every task on `threads` workers; results land at their own index.
std::vector<std::vector<TrialResult>> run_tasks(const std::vector<std::function<std::vector<TrialResult>()>>& tasks,
                                                int threads) {
  std::vector<std::vector<TrialResult>> results(tasks.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        try {
          results[i] = tasks[i]();
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

struct Cell {
  Index m;
  Index n;
  Index s;
};

// Rows ordered by (cell, algorithm, trial); each (cell, trial) task generates
// one instance and runs every algorithm on it.
std::vector<TrialResult> run_cells(const std::vector<Algorithm>& algorithms, const std::vector<Cell>& cells,
                                   ProblemKind kind, int trials, std::uint64_t base_seed, const BenchOptions& opts) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<std::function<std::vector<TrialResult>()>> tasks;
  for (const Cell& cell : cells) {
    check_dims(cell.m, cell.n, cell.s);
    for (int t = 0; t < trials; ++t) {
      tasks.emplace_back([=, &algorithms] {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(t);
        const Instance inst = kind == ProblemKind::CS ? gen_gaussian_instance(cell.m, cell.n, cell.s, seed)
                                                      : gen_qcs_instance(cell.m, cell.n, cell.s, seed);
        std::vector<TrialResult> out;
        for (Algorithm alg : algorithms) out.push_back(run_trial(alg, inst, t));
        return out;
      });
    }
  }
  const auto per_task = run_tasks(tasks, opts.threads);

  std::vector<TrialResult> rows;
  rows.reserve(tasks.size() * algorithms.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (int t = 0; t < trials; ++t) {
        rows.push_back(per_task[c * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)][a]);
      }
    }
  }
  return rows;
}

}  // namespace

std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::GPNP: return "gpnp";
    case Algorithm::IHT: return "iht";
    case Algorithm::NIHT: return "niht";
    case Algorithm::HTP: return "htp";
    case Algorithm::CoSaMP: return "cosamp";
    case Algorithm::SP: return "sp";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm alg : all_algorithms()) {
    if (to_string(alg) == name) return alg;
  }
  return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algs = {Algorithm::GPNP, Algorithm::IHT,    Algorithm::NIHT,
                                              Algorithm::HTP,  Algorithm::CoSaMP, Algorithm::SP};
  return algs;
}

std::uint64_t Instance::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  fnv_value(h, static_cast<int>(kind));
  fnv_value(h, static_cast<std::int64_t>(m));
  fnv_value(h, static_cast<std::int64_t>(n));
  fnv_value(h, static_cast<std::int64_t>(s));
  if (kind == ProblemKind::CS) {
    fnv_matrix(h, cs().a);
    fnv_matrix(h, cs().b);
  } else {
    fnv_matrix(h, qcs().rows);
    fnv_matrix(h, qcs().b);
  }
  fnv_matrix(h, x_star);
  return h;
}

Instance gen_gaussian_instance(Index m, Index n, Index s, std::uint64_t seed) {
  check_dims(m, n, s);
  Matrix a = gaussian_matrix(m, n, seed);
  for (Index j = 0; j < n; ++j) {
    const double norm = a.col(j).norm();
    if (norm > 0.0) a.col(j) /= norm;
  }
  Instance inst;
  inst.kind = ProblemKind::CS;
  inst.x_star = sparse_signal(n, s, seed);
  Vector b = a * inst.x_star;
  inst.problem = CsProblem(std::move(a), std::move(b));
  inst.seed = seed;
  inst.m = m;
  inst.n = n;
  inst.s = s;
  return inst;
}

Instance gen_qcs_instance(Index m, Index n, Index s, std::uint64_t seed) {
  check_dims(m, n, s);
  Matrix rows = gaussian_matrix(m, n, seed);
  Instance inst;
  inst.kind = ProblemKind::QCS;
  inst.x_star = sparse_signal(n, s, seed);
  Vector b = (rows * inst.x_star).array().square();
  inst.problem = QcsProblem(std::move(rows), std::move(b));
  inst.seed = seed;
  inst.m = m;
  inst.n = n;
  inst.s = s;
  return inst;
}

double relative_error(const Vector& x, const Vector& x_star) {
  const double denom = x_star.norm();
  if (!(denom > 0.0)) throw std::invalid_argument("relative_error: x_star is zero");
  return (x - x_star).norm() / denom;
}

double sign_invariant_relative_error(const Vector& x, const Vector& x_star) {
  return std::min(relative_error(x, x_star), relative_error(-x, x_star));
}

double psnr(const Vector& x, const Vector& x_star, Index n) {
  const double err = (x - x_star).squaredNorm();
  if (err < 1e-300) return kPsnrCap;
  return 10.0 * std::log10(static_cast<double>(n) / err);
}

TrialResult run_trial(Algorithm alg, const Instance& inst, int trial) {
  if (inst.kind == ProblemKind::QCS && alg != Algorithm::GPNP) {
    throw std::invalid_argument("only gpnp supports QCS instances");
  }
  const auto start = std::chrono::steady_clock::now();
  SolverResult res;
  if (alg == Algorithm::GPNP) {
    if (inst.kind == ProblemKind::CS) {
      res = solve(CsObjective(inst.cs()), inst.s, config_default(ProblemKind::CS));
    } else {
      res = solve(QcsObjective(inst.qcs()), inst.s, config_default(ProblemKind::QCS));
    }
  } else {
    const auto base = static_cast<BaselineAlgorithm>(static_cast<int>(alg) - 1);
    res = baseline_solve(inst.cs(), inst.s, baseline_default(base));
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialResult r;
  r.algorithm = std::string(to_string(alg));
  r.m = inst.m;
  r.n = inst.n;
  r.s = inst.s;
  r.trial = trial;
  r.seed = inst.seed;
  r.re_er = inst.kind == ProblemKind::CS ? relative_error(res.x_final, inst.x_star)
                                         : sign_invariant_relative_error(res.x_final, inst.x_star);
  const Vector& x = res.x_final;
  const bool flip = inst.kind == ProblemKind::QCS && (x + inst.x_star).norm() < (x - inst.x_star).norm();
  r.psnr = psnr(flip ? Vector(-x) : x, inst.x_star, inst.n);
  r.f_final = res.f_trace.back();
  r.iterations = res.iterations;
  r.newton_steps = res.newton_steps_taken;
  r.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
  r.success = r.re_er < kSuccessThreshold;
  r.termination = std::string(to_string(res.termination));
  r.instance_hash = inst.hash();
  return r;
}

int default_threads() {
  if (const char* env = std::getenv("GPNP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<TrialResult> run_success_rate(const std::vector<Algorithm>& algorithms, Index m, Index n,
                                          const std::vector<Index>& s_values, int trials, std::uint64_t base_seed,
                                          const BenchOptions& opts) {
  std::vector<Cell> cells;
  for (Index s : s_values) cells.push_back({m, n, s});
  return run_cells(algorithms, cells, ProblemKind::CS, trials, base_seed, opts);
}

std::vector<TrialResult> run_sample_sweep(const std::vector<Algorithm>& algorithms, Index n, Index s,
                                          const std::vector<double>& m_fracs, int trials, std::uint64_t base_seed,
                                          const BenchOptions& opts) {
  std::vector<Cell> cells;
  for (double frac : m_fracs) {
    cells.push_back({static_cast<Index>(std::floor(frac * static_cast<double>(n))), n, s});
  }
  return run_cells(algorithms, cells, ProblemKind::CS, trials, base_seed, opts);
}

std::vector<TrialResult> run_scaling(const std::vector<Algorithm>& algorithms, const std::vector<ProblemSize>& sizes,
                                     int trials, std::uint64_t base_seed, const BenchOptions& opts) {
  std::vector<Cell> cells;
  for (const ProblemSize& size : sizes) cells.push_back({size.m, size.n, size.s});
  return run_cells(algorithms, cells, ProblemKind::CS, trials, base_seed, opts);
}

std::vector<TrialResult> run_qcs(const QcsBenchPlan& plan, int trials, std::uint64_t base_seed,
                                 const BenchOptions& opts) {
  std::vector<Cell> cells;
  for (Index s : plan.grid_s) cells.push_back({plan.grid_m, plan.grid_n, s});
  for (Index n : plan.scaling_n) {
    const auto m = static_cast<Index>(std::floor(0.8 * static_cast<double>(n)));
    const Index s = std::max<Index>(1, static_cast<Index>(std::floor(0.01 * static_cast<double>(n))));
    cells.push_back({m, n, s});
  }
  return run_cells({Algorithm::GPNP}, cells, ProblemKind::QCS, trials, base_seed, opts);
}

std::vector<CellSummary> summarize(const std::vector<TrialResult>& rows) {
  std::vector<CellSummary> out;
  std::map<std::tuple<std::string, Index, Index, Index>, std::size_t> where;
  for (const TrialResult& r : rows) {
    const auto key = std::make_tuple(r.algorithm, r.m, r.n, r.s);
    auto it = where.find(key);
    if (it == where.end()) {
      it = where.emplace(key, out.size()).first;
      CellSummary c;
      c.algorithm = r.algorithm;
      c.m = r.m;
      c.n = r.n;
      c.s = r.s;
      out.push_back(c);
    }
    CellSummary& c = out[it->second];
    ++c.trials;
    c.mean_re_er += r.re_er;
    c.mean_time += r.wall_time_seconds;
    if (r.success) {
      ++c.successes;
      c.mean_f_success += r.f_final;
    }
  }
  for (CellSummary& c : out) {
    c.success_rate = static_cast<double>(c.successes) / c.trials;
    c.mean_re_er /= c.trials;
    c.mean_time /= c.trials;
    c.mean_f_success = c.successes > 0 ? c.mean_f_success / c.successes : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace sco
