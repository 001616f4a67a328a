#pragma once

// Text instance files:
//
//   SCO-INSTANCE v1 <CS|QCS> <m> <n> <s>
//   m lines of n numbers          (A for CS, rows a_i for QCS)
//   1 line of m numbers           (b)
//   XSTAR                         (optional)
//   1 line of n numbers           (x*, only after XSTAR)
//
// Numbers are written in the shortest form that parses back to the same
// double, so write-then-read is bit exact.

#include "sco/bench.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sco {

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// Throws InstanceFormatError naming the offending field. The seed is not
/// stored and reads back as 0; x_star is empty when the file has no XSTAR block.
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

}  // namespace sco
