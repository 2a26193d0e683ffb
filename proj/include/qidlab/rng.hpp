#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qidlab {

// Deterministic, platform-independent randomness.
//
// Two rules keep every seeded run reproducible across machines and thread
// counts:
//   * only std::mt19937_64 raw output is consumed (its bit stream is fixed
//     by the standard); std::uniform_* distributions are never used because
//     their algorithms are implementation-defined;
//   * independent work items (trials, attempts) each get a substream derived
//     from (root seed, item index), so scheduling order cannot matter.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  // Substream for item `stream` under a root seed.  Derivation is a
  // SplitMix64 step, which decorrelates consecutive indices.
  static Prng substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [0, bound) by rejection; exact, no modulo bias.
  std::uint64_t bounded(std::uint64_t bound);

  // Index sample by inverse CDF over cumulative masses (last entry ~1).
  // Returns the first index whose cumulative mass exceeds the draw.
  std::size_t sample_cumulative(const std::vector<double>& cumulative);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t state);

std::vector<double> cumulative_sums(const std::vector<double>& masses);

}  // namespace qidlab
