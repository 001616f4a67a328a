#include "cli.hpp"

#include "sco/bench.hpp"
#include "sco/instance_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace sco::cli {
namespace {

// Thrown for bad user input; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Index to_index(const std::string& token) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  if (used != token.size()) throw std::invalid_argument("not an integer: '" + token + "'");
  return static_cast<Index>(v);
}

double to_real(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + token + "'");
  return v;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string valid_algorithm_names() {
  std::vector<std::string> names;
  for (Algorithm a : all_algorithms()) names.emplace_back(to_string(a));
  return join(names, ", ");
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  if (trim(text).empty()) return all_algorithms();
  std::vector<Algorithm> algs;
  for (const std::string& name : split(text, ',')) {
    const auto alg = parse_algorithm(name);
    if (!alg) throw InputError("unknown algorithm '" + name + "'; valid names: " + valid_algorithm_names());
    if (std::find(algs.begin(), algs.end(), *alg) == algs.end()) algs.push_back(*alg);
  }
  return algs;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t base_seed = 0;
  std::string version = std::string(kToolVersion);
  std::string timestamp = utc_timestamp();

  void write(std::ostream& out) const {
    out << "# command: " << command << '\n';
    for (const auto& [key, value] : parameters) out << "# param " << key << ": " << value << '\n';
    out << "# base_seed: " << base_seed << '\n';
    out << "# version: " << version << '\n';
    out << "# timestamp: " << timestamp << '\n';
  }
};

std::string csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

void write_bench_csv(std::ostream& out, const RunManifest& manifest, const std::vector<TrialResult>& rows,
                     bool timing) {
  manifest.write(out);
  out << kBenchColumns << '\n';
  for (const TrialResult& r : rows) {
    out << r.algorithm << ',' << r.m << ',' << r.n << ',' << r.s << ',' << r.trial << ',' << r.seed << ','
        << csv_real(r.re_er) << ',' << csv_real(r.psnr) << ',' << csv_real(r.f_final) << ',' << r.iterations << ','
        << r.newton_steps << ',' << (timing ? csv_real(r.wall_time_seconds) : std::string("NA")) << ','
        << (r.success ? "true" : "false") << ',' << r.termination << '\n';
  }
}

void print_summary(std::ostream& out, const std::vector<TrialResult>& rows) {
  for (const CellSummary& c : summarize(rows)) {
    out << std::left << std::setw(7) << c.algorithm << " m=" << c.m << " n=" << c.n << " s=" << c.s
        << "  success " << c.successes << '/' << c.trials << "  mean ReEr " << std::scientific
        << std::setprecision(2) << c.mean_re_er << "  mean time " << c.mean_time << "s" << std::defaultfloat
        << '\n';
  }
}

struct Common {
  int trials = 100;
  std::uint64_t seed = 1;
  std::string algs;
  std::string out_path;
  int threads = 0;
  bool no_timing = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_algs) {
  cmd->add_option("--trials", c.trials, "Trials per cell")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed; trial t uses seed + t")->capture_default_str();
  if (with_algs) cmd->add_option("--algs", c.algs, "Comma-separated algorithms (empty: all)");
  cmd->add_option("--out", c.out_path, "CSV output path")->required();
  cmd->add_option("--threads", c.threads, "Worker threads (default: GPNP_THREADS or logical cores)");
  cmd->add_flag("--no-timing", c.no_timing, "Write NA in the time_s column so reruns are byte-identical");
  cmd->add_flag("--quiet", c.quiet, "Do not print the per-cell summary");
}

void check_common(const Common& c) {
  if (c.trials < 1) throw InputError("trials must be >= 1");
  if (c.threads < 0) throw InputError("threads must be >= 1");
}

void check_dims(Index m, Index n, Index s) {
  if (m < 1) throw InputError("m must be ≥ 1");
  if (n < 1) throw InputError("n must be ≥ 1");
  if (s < 1) throw InputError("s must be ≥ 1");
  if (s > n) throw InputError("s must be ≤ n");
}

void emit(const Common& c, const RunManifest& manifest, const std::vector<TrialResult>& rows, std::ostream& out) {
  std::ofstream file(c.out_path);
  if (!file) throw InputError("cannot open " + c.out_path + " for writing");
  write_bench_csv(file, manifest, rows, !c.no_timing);
  if (!file) throw InputError("write to " + c.out_path + " failed");
  if (!c.quiet) print_summary(out, rows);
}

BenchOptions options_for(const Common& c) {
  BenchOptions opts;
  opts.threads = c.threads > 0 ? c.threads : default_threads();
  return opts;
}

RunManifest manifest_for(const std::string& command, const Common& c, const std::vector<Algorithm>& algs) {
  RunManifest m;
  m.command = command;
  m.base_seed = c.seed;
  std::vector<std::string> names;
  for (Algorithm a : algs) names.emplace_back(to_string(a));
  m.parameters.emplace_back("algorithms", join(names, ","));
  m.parameters.emplace_back("trials", std::to_string(c.trials));
  return m;
}

std::string describe(const std::vector<Index>& values) {
  std::vector<std::string> parts;
  for (Index v : values) parts.push_back(std::to_string(v));
  return join(parts, ",");
}

std::string describe(const std::vector<double>& values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(format_double(v));
  return join(parts, ",");
}

template <class T>
std::vector<T> parse_range_as(std::string_view text, const std::string& flag) {
  try {
    if constexpr (std::is_same_v<T, Index>) {
      return parse_int_range(text);
    } else {
      return parse_real_range(text);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(flag + ": " + e.what());
  }
}

}  // namespace

std::vector<Index> parse_int_range(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty range");
  std::vector<Index> values;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected lo:hi:step, got '" + t + "'");
    const Index lo = to_index(parts[0]);
    const Index hi = to_index(parts[1]);
    const Index step = to_index(parts[2]);
    if (step <= 0) throw std::invalid_argument("step must be positive");
    if (hi < lo) throw std::invalid_argument("hi must be >= lo");
    for (Index v = lo; v <= hi; v += step) values.push_back(v);
  } else {
    for (const std::string& p : split(t, ',')) values.push_back(to_index(p));
  }
  return values;
}

std::vector<double> parse_real_range(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty range");
  std::vector<double> values;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected lo:hi:step, got '" + t + "'");
    const double lo = to_real(parts[0]);
    const double hi = to_real(parts[1]);
    const double step = to_real(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (hi < lo) throw std::invalid_argument("hi must be >= lo");
    // Index-based stepping avoids accumulated drift; the slack keeps hi itself.
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  } else {
    for (const std::string& p : split(t, ',')) values.push_back(to_real(p));
  }
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparsity-constrained solvers: gradient projection Newton pursuit and greedy baselines", "gpnp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a CSV result row");
  std::string instance_path;
  Index m = 64, n = 256, s = 5;
  std::uint64_t seed = 1;
  std::string alg_name = "gpnp";
  std::string kind_name = "cs";
  solve_cmd->add_option("--instance", instance_path, "Instance file (overrides generation flags)");
  solve_cmd->add_option("--m", m, "Measurements")->capture_default_str();
  solve_cmd->add_option("--n", n, "Dimension")->capture_default_str();
  solve_cmd->add_option("--s", s, "Sparsity level")->capture_default_str();
  solve_cmd->add_option("--seed", seed, "Instance seed")->capture_default_str();
  solve_cmd->add_option("--kind", kind_name, "cs or qcs (generated instances)")->capture_default_str();
  solve_cmd->add_option("--alg", alg_name, "Algorithm")->capture_default_str();

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded instance file");
  std::string gen_out;
  gen_cmd->add_option("--m", m, "Measurements")->capture_default_str();
  gen_cmd->add_option("--n", n, "Dimension")->capture_default_str();
  gen_cmd->add_option("--s", s, "Sparsity level")->capture_default_str();
  gen_cmd->add_option("--seed", seed, "Instance seed")->capture_default_str();
  gen_cmd->add_option("--kind", kind_name, "cs or qcs")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output path")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep and write a CSV table");
  bench_cmd->require_subcommand(1);

  Common sr_c;
  Index sr_m = 64, sr_n = 256;
  std::string sr_s = "5:35:1";
  auto* sr_cmd = bench_cmd->add_subcommand("success-rate", "Success rate vs. sparsity level");
  add_common(sr_cmd, sr_c, true);
  sr_cmd->add_option("--m", sr_m, "Measurements")->capture_default_str();
  sr_cmd->add_option("--n", sr_n, "Dimension")->capture_default_str();
  sr_cmd->add_option("--s", sr_s, "Sparsity levels (v, a,b,c or lo:hi:step)")->capture_default_str();

  Common ss_c;
  Index ss_n = 256, ss_s = 13;
  std::string ss_frac = "0.08:0.34:0.02";
  auto* ss_cmd = bench_cmd->add_subcommand("sample-sweep", "Success rate vs. m/n");
  add_common(ss_cmd, ss_c, true);
  ss_cmd->add_option("--n", ss_n, "Dimension")->capture_default_str();
  ss_cmd->add_option("--s", ss_s, "Sparsity level")->capture_default_str();
  ss_cmd->add_option("--m-frac", ss_frac, "Ratios m/n (v, a,b,c or lo:hi:step)")->capture_default_str();

  Common sc_c;
  sc_c.trials = 20;
  std::string sc_n = "2000";
  double sc_m_ratio = 0.25, sc_s_ratio = 0.05;
  auto* sc_cmd = bench_cmd->add_subcommand("scaling", "Accuracy and time at larger n (m = ratio n, s = ratio n)");
  add_common(sc_cmd, sc_c, true);
  sc_cmd->add_option("--n", sc_n, "Dimensions (v, a,b,c or lo:hi:step)")->capture_default_str();
  sc_cmd->add_option("--m-ratio", sc_m_ratio, "m = floor(ratio * n)")->capture_default_str();
  sc_cmd->add_option("--s-ratio", sc_s_ratio, "s = floor(ratio * n)")->capture_default_str();

  Common q_c;
  q_c.trials = 20;
  Index q_m = 80, q_n = 120;
  std::string q_s = "3:15:1";
  std::string q_scaling = "500";
  auto* q_cmd = bench_cmd->add_subcommand("qcs", "Quadratic compressive sensing: success grid and scaling runs");
  add_common(q_cmd, q_c, false);
  q_cmd->add_option("--grid-m", q_m, "Grid measurements")->capture_default_str();
  q_cmd->add_option("--grid-n", q_n, "Grid dimension")->capture_default_str();
  q_cmd->add_option("--s", q_s, "Grid sparsity levels")->capture_default_str();
  q_cmd->add_option("--scaling-n", q_scaling, "Scaling dimensions (m = 0.8n, s = max(1, 0.01n)); 'none' to skip")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (e.get_exit_code() == 0) return kExitOk;
    return kExitInput;
  }

  std::string command_line = "gpnp";
  for (const std::string& a : args) command_line += " " + a;

  try {
    if (solve_cmd->parsed()) {
      const auto alg = parse_algorithm(alg_name);
      if (!alg) throw InputError("unknown algorithm '" + alg_name + "'; valid names: " + valid_algorithm_names());
      Instance inst;
      if (!instance_path.empty()) {
        try {
          inst = read_instance(std::filesystem::path(instance_path));
        } catch (const InstanceFormatError& e) {
          throw InputError(std::string("bad instance file: ") + e.what());
        }
      } else {
        check_dims(m, n, s);
        if (kind_name == "cs") {
          inst = gen_gaussian_instance(m, n, s, seed);
        } else if (kind_name == "qcs") {
          inst = gen_qcs_instance(m, n, s, seed);
        } else {
          throw InputError("kind must be cs or qcs");
        }
      }
      if (inst.kind == ProblemKind::QCS && *alg != Algorithm::GPNP) {
        throw InputError("only gpnp supports QCS instances");
      }

      const bool have_truth = inst.x_star.size() > 0 && inst.x_star.norm() > 0.0;
      TrialResult r;
      if (have_truth) {
        r = run_trial(*alg, inst);
      } else {
        // No ground truth: solve against a placeholder and blank the metrics.
        Instance probe = inst;
        probe.x_star = Vector::Ones(inst.n);
        r = run_trial(*alg, probe);
        r.re_er = r.psnr = std::numeric_limits<double>::quiet_NaN();
        r.success = false;
      }
      out << "algorithm,m,n,s,seed,re_er,psnr,f_final,iterations,newton_steps,time_s,success,termination\n";
      out << r.algorithm << ',' << inst.m << ',' << inst.n << ',' << inst.s << ',' << inst.seed << ','
          << csv_real(r.re_er) << ',' << csv_real(r.psnr) << ',' << csv_real(r.f_final) << ',' << r.iterations << ','
          << r.newton_steps << ',' << csv_real(r.wall_time_seconds) << ',' << (r.success ? "true" : "false") << ','
          << r.termination << '\n';
      return r.termination == to_string(Termination::LineSearchStalled) ? kExitStall : kExitOk;
    }

    if (gen_cmd->parsed()) {
      check_dims(m, n, s);
      Instance inst;
      if (kind_name == "cs") {
        inst = gen_gaussian_instance(m, n, s, seed);
      } else if (kind_name == "qcs") {
        inst = gen_qcs_instance(m, n, s, seed);
      } else {
        throw InputError("kind must be cs or qcs");
      }
      try {
        write_instance(std::filesystem::path(gen_out), inst);
      } catch (const std::runtime_error& e) {
        throw InputError(e.what());
      }
      out << "wrote " << gen_out << " (hash " << std::hex << inst.hash() << std::dec << ")\n";
      return kExitOk;
    }

    if (sr_cmd->parsed()) {
      check_common(sr_c);
      const auto algs = parse_algorithms(sr_c.algs);
      const auto s_values = parse_range_as<Index>(sr_s, "--s");
      for (Index sv : s_values) check_dims(sr_m, sr_n, sv);
      RunManifest manifest = manifest_for(command_line, sr_c, algs);
      manifest.parameters.insert(manifest.parameters.begin(),
                                 {{"subcommand", "success-rate"}, {"m", std::to_string(sr_m)},
                                  {"n", std::to_string(sr_n)}, {"s", describe(s_values)}});
      const auto rows = run_success_rate(algs, sr_m, sr_n, s_values, sr_c.trials, sr_c.seed, options_for(sr_c));
      emit(sr_c, manifest, rows, out);
      return kExitOk;
    }

    if (ss_cmd->parsed()) {
      check_common(ss_c);
      const auto algs = parse_algorithms(ss_c.algs);
      const auto fracs = parse_range_as<double>(ss_frac, "--m-frac");
      for (double f : fracs) {
        check_dims(static_cast<Index>(std::floor(f * static_cast<double>(ss_n))), ss_n, ss_s);
      }
      RunManifest manifest = manifest_for(command_line, ss_c, algs);
      manifest.parameters.insert(manifest.parameters.begin(), {{"subcommand", "sample-sweep"},
                                                               {"n", std::to_string(ss_n)},
                                                               {"s", std::to_string(ss_s)},
                                                               {"m_frac", describe(fracs)}});
      const auto rows = run_sample_sweep(algs, ss_n, ss_s, fracs, ss_c.trials, ss_c.seed, options_for(ss_c));
      emit(ss_c, manifest, rows, out);
      return kExitOk;
    }

    if (sc_cmd->parsed()) {
      check_common(sc_c);
      const auto algs = parse_algorithms(sc_c.algs);
      const auto n_values = parse_range_as<Index>(sc_n, "--n");
      std::vector<ProblemSize> sizes;
      for (Index nv : n_values) {
        ProblemSize p;
        p.n = nv;
        p.m = static_cast<Index>(std::floor(sc_m_ratio * static_cast<double>(nv)));
        p.s = static_cast<Index>(std::floor(sc_s_ratio * static_cast<double>(nv)));
        check_dims(p.m, p.n, p.s);
        sizes.push_back(p);
      }
      RunManifest manifest = manifest_for(command_line, sc_c, algs);
      manifest.parameters.insert(manifest.parameters.begin(),
                                 {{"subcommand", "scaling"}, {"n", describe(n_values)},
                                  {"m_ratio", format_double(sc_m_ratio)}, {"s_ratio", format_double(sc_s_ratio)}});
      const auto rows = run_scaling(algs, sizes, sc_c.trials, sc_c.seed, options_for(sc_c));
      emit(sc_c, manifest, rows, out);
      return kExitOk;
    }

    if (q_cmd->parsed()) {
      check_common(q_c);
      QcsBenchPlan plan;
      plan.grid_m = q_m;
      plan.grid_n = q_n;
      plan.grid_s = parse_range_as<Index>(q_s, "--s");
      for (Index sv : plan.grid_s) check_dims(q_m, q_n, sv);
      if (trim(q_scaling) != "none") plan.scaling_n = parse_range_as<Index>(q_scaling, "--scaling-n");
      for (Index nv : plan.scaling_n) {
        if (nv < 2) throw InputError("--scaling-n values must be >= 2");
      }
      RunManifest manifest = manifest_for(command_line, q_c, {Algorithm::GPNP});
      manifest.parameters.insert(manifest.parameters.begin(),
                                 {{"subcommand", "qcs"}, {"grid_m", std::to_string(q_m)},
                                  {"grid_n", std::to_string(q_n)}, {"grid_s", describe(plan.grid_s)},
                                  {"scaling_n", plan.scaling_n.empty() ? "none" : describe(plan.scaling_n)}});
      const auto rows = run_qcs(plan, q_c.trials, q_c.seed, options_for(q_c));
      emit(q_c, manifest, rows, out);
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace sco::cli
