#pragma once

// Counter-based random streams ("sco-splitmix-v1").
//
// A stream is identified by a 64-bit key. Draw i of the stream is
// mix64(key + (i + 1) * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
// finalizer. Keys are derived as derive_key(seed, purpose) so that the matrix,
// support and value draws of one instance never share a stream. Uniforms use
// the top 53 bits; normals use Box-Muller on two consecutive draws, keeping
// only the cosine branch. Every step is specified here so other languages can
// reproduce instances bit for bit.

#include <cstdint>

namespace sco {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
  Matrix = 1,
  Support = 2,
  Values = 3,
};

constexpr std::uint64_t derive_key(std::uint64_t seed, StreamPurpose purpose) {
  return mix64(mix64(seed) ^ (static_cast<std::uint64_t>(purpose) * kGoldenGamma));
}

class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) : key_(key) {}
  CounterStream(std::uint64_t seed, StreamPurpose purpose) : key_(derive_key(seed, purpose)) {}

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGoldenGamma);
  }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal.
  double normal();

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sco
