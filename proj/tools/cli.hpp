#pragma once

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it in-process.
//
// Exit codes: 0 success, 2 usage or input error, 3 line-search stall on `solve`.

#include "sco/core.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitStall = 3;

inline constexpr std::string_view kToolVersion = "1.0.0";

/// CSV column order for bench tables.
inline constexpr std::string_view kBenchColumns =
    "algorithm,m,n,s,trial,seed,re_er,psnr,f_final,iterations,newton_steps,time_s,success,termination";

/// Parses "v", "a,b,c" or "lo:hi:step" (inclusive of hi). Throws std::invalid_argument.
std::vector<Index> parse_int_range(std::string_view text);
std::vector<double> parse_real_range(std::string_view text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sco::cli
