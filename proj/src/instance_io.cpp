#include "sco/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace sco {
namespace {

constexpr std::string_view kMagic = "SCO-INSTANCE";
constexpr std::string_view kVersion = "v1";

void write_row(std::ostream& out, const double* data, Index count, Index stride) {
  for (Index j = 0; j < count; ++j) {
    if (j > 0) out << ' ';
    out << format_double(data[j * stride]);
  }
  out << '\n';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InstanceFormatError(field + ": " + what);
}

double parse_number(std::string_view token, const std::string& field) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(field, "cannot parse '" + std::string(token) + "'");
  if (!std::isfinite(v)) fail(field, "non-finite entry");
  return v;
}

Index parse_dim(std::string_view token, const std::string& field) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || v < 1) {
    fail(field, "expected a positive integer, got '" + std::string(token) + "'");
  }
  return static_cast<Index>(v);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!split(line).empty()) return true;
    }
    return false;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

Vector read_values(LineReader& reader, Index expected, const std::string& field) {
  std::string line;
  if (!reader.next(line)) fail(field, "missing line");
  const auto tokens = split(line);
  if (static_cast<Index>(tokens.size()) != expected) {
    fail(field, "expected " + std::to_string(expected) + " values, found " + std::to_string(tokens.size()) +
                    " (line " + std::to_string(reader.number()) + ")");
  }
  Vector v(expected);
  for (Index j = 0; j < expected; ++j) v[j] = parse_number(tokens[static_cast<std::size_t>(j)], field);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_instance(std::ostream& out, const Instance& inst) {
  const Matrix& a = inst.kind == ProblemKind::CS ? inst.cs().a : inst.qcs().rows;
  const Vector& b = inst.kind == ProblemKind::CS ? inst.cs().b : inst.qcs().b;
  out << kMagic << ' ' << kVersion << ' ' << to_string(inst.kind) << ' ' << a.rows() << ' ' << a.cols() << ' '
      << inst.s << '\n';
  for (Index i = 0; i < a.rows(); ++i) write_row(out, a.data() + i, a.cols(), a.rows());
  write_row(out, b.data(), b.size(), 1);
  if (inst.x_star.size() > 0) {
    out << "XSTAR\n";
    write_row(out, inst.x_star.data(), inst.x_star.size(), 1);
  }
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_instance(out, inst);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Instance read_instance(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) fail("header", "empty file");
  const auto head = split(line);
  if (head.size() != 6 || head[0] != kMagic) fail("header", "expected 'SCO-INSTANCE v1 <kind> <m> <n> <s>'");
  if (head[1] != kVersion) fail("version", "unsupported version '" + std::string(head[1]) + "'");

  Instance inst;
  if (head[2] == "CS") {
    inst.kind = ProblemKind::CS;
  } else if (head[2] == "QCS") {
    inst.kind = ProblemKind::QCS;
  } else {
    fail("kind", "expected CS or QCS, got '" + std::string(head[2]) + "'");
  }
  inst.m = parse_dim(head[3], "m");
  inst.n = parse_dim(head[4], "n");
  inst.s = parse_dim(head[5], "s");
  if (inst.s > inst.n) fail("s", "exceeds n");

  Matrix a(inst.m, inst.n);
  for (Index i = 0; i < inst.m; ++i) {
    a.row(i) = read_values(reader, inst.n, "matrix row " + std::to_string(i)).transpose();
  }
  Vector b = read_values(reader, inst.m, "b");

  if (reader.next(line)) {
    const auto tokens = split(line);
    if (tokens.size() != 1 || tokens[0] != "XSTAR") {
      fail("XSTAR", "unexpected content after b (line " + std::to_string(reader.number()) +
                        "); check the declared m");
    }
    inst.x_star = read_values(reader, inst.n, "x_star");
    if (reader.next(line)) fail("trailer", "unexpected content after x_star");
  }

  if (inst.kind == ProblemKind::CS) {
    inst.problem = CsProblem(std::move(a), std::move(b));
  } else {
    inst.problem = QcsProblem(std::move(a), std::move(b));
  }
  return inst;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("file: cannot open " + path.string());
  return read_instance(in);
}

}  // namespace sco
