#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "qidlab/errors.hpp"

namespace qidlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// C(n, k) exactly; zero when k is out of range.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt pow2(std::uint64_t exponent) {
  BigInt one = 1;
  return one << exponent;
}

// ceil(num / den) for positive den.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  require_internal(den > 0, "ceil_div: nonpositive denominator");
  return (num + den - 1) / den;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace qidlab
