#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace qidlab {

inline constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// FNV-1a over raw bytes; used for content fingerprints (cache keys, report
// hashes).  Stable across platforms for the byte sequences we feed it.
inline std::uint64_t fnv64(const void* data, std::size_t size,
                           std::uint64_t basis = kFnvBasis) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = basis;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= kFnvPrime;
  }
  return hash;
}

inline std::uint64_t fnv64(const std::string& text,
                           std::uint64_t basis = kFnvBasis) {
  return fnv64(text.data(), text.size(), basis);
}

std::string to_hex(std::uint64_t value);

}  // namespace qidlab
