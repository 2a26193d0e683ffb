#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace qidlab {

// Two failure classes, mapped to process exit codes by the CLI:
//   ValidationError (exit 1): the caller handed us something malformed, or a
//     stated precondition does not hold.  Carries a short machine-readable
//     kind plus an optional numeric payload (offending eigenvalue, trace, ...).
//   InternalError (exit 2): an invariant the library itself maintains was
//     violated; indicates a bug, not bad input.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, const std::string& message,
                  double value = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(kind + ": " + message),
        kind_(std::move(kind)),
        value_(value) {}

  const std::string& kind() const { return kind_; }
  double value() const { return value_; }

 private:
  std::string kind_;
  double value_;
};

class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& message)
      : std::logic_error(message) {}
};

// Kind strings used across the library.  Centralized so tests and the CLI
// match on identical spellings.
namespace errkind {
inline constexpr const char* NonHermitian = "NonHermitian";
inline constexpr const char* NotPSD = "NotPSD";
inline constexpr const char* TraceNotOne = "TraceNotOne";
inline constexpr const char* NotNormalized = "NotNormalized";
inline constexpr const char* Incomplete = "Incomplete";
inline constexpr const char* EffectOutOfRange = "EffectOutOfRange";
inline constexpr const char* DimensionMismatch = "DimensionMismatch";
inline constexpr const char* SizeMismatch = "SizeMismatch";
inline constexpr const char* IndexOutOfRange = "IndexOutOfRange";
inline constexpr const char* BadLetter = "BadLetter";
inline constexpr const char* BadParameter = "BadParameter";
inline constexpr const char* AlphabetTooLarge = "AlphabetTooLarge";
inline constexpr const char* ResourceLimit = "ResourceLimit";
inline constexpr const char* EmptyGoodSet = "EmptyGoodSet";
inline constexpr const char* NonRationalInput = "NonRationalInput";
inline constexpr const char* PrerequisiteNotVerified = "PrerequisiteNotVerified";
inline constexpr const char* ParseError = "ParseError";
}  // namespace errkind

[[noreturn]] inline void fail_validation(
    const char* kind, const std::string& message,
    double value = std::numeric_limits<double>::quiet_NaN()) {
  throw ValidationError(kind, message, value);
}

inline void require_internal(bool ok, const std::string& message) {
  if (!ok) throw InternalError(message);
}

}  // namespace qidlab
