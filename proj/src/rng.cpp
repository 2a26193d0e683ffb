#include "qidlab/rng.hpp"

#include "qidlab/errors.hpp"

namespace qidlab {

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Prng Prng::substream(std::uint64_t seed, std::uint64_t stream) {
  // Distinct (seed, stream) pairs map to distinct engine seeds with high
  // probability; stream + 1 keeps substream(seed, 0) != Prng(seed).
  return Prng(splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Prng::bounded(std::uint64_t bound) {
  require_internal(bound > 0, "bounded: empty range");
  const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t draw = next_u64();
    if (draw >= threshold) return draw % bound;
  }
}

std::size_t Prng::sample_cumulative(const std::vector<double>& cumulative) {
  require_internal(!cumulative.empty(), "sample_cumulative: empty table");
  const double u = uniform01();
  std::size_t lo = 0;
  std::size_t hi = cumulative.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < cumulative[mid]) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::vector<double> cumulative_sums(const std::vector<double>& masses) {
  std::vector<double> cumulative(masses.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    acc += masses[i];
    cumulative[i] = acc;
  }
  return cumulative;
}

}  // namespace qidlab
