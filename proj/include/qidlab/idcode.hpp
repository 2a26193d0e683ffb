#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qidlab/bigint.hpp"
#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"
#include "qidlab/setfamily.hpp"
#include "qidlab/txcode.hpp"

namespace qidlab {

// Simultaneous identification code: message i is a sparse input
// distribution P_i together with an outcome subset A_i of one shared base
// measurement; its acceptance effect is the sum of the base effects over
// A_i.  Receiver i accepts when the shared measurement lands in A_i.
struct SimQIDCode {
  int n = 0;                               // block length
  POM base;                                // measurement on the word space
  std::vector<std::vector<int>> subsets;   // A_i, 1-based outcome indices
  std::vector<SparseDistribution> inputs;  // P_i over words of length n

  std::size_t message_count() const { return inputs.size(); }
  // 1-based message index.
  Effect message_effect(std::size_t i) const;
};

// Identification code with arbitrary acceptance effects (no shared
// measurement structure).
struct QIDCodeGeneral {
  int n = 0;
  std::vector<SparseDistribution> inputs;
  std::vector<Effect> effects;

  std::size_t message_count() const { return inputs.size(); }
};

struct IDVerifyOptions {
  bool full_matrix = false;  // keep the whole N x N acceptance table
};

struct IDVerification {
  // First kind: worst chance of rejecting one's own message.
  double lambda1_hat = 0.0;
  std::size_t worst_first = 0;  // 1-based message attaining lambda1_hat
  // Second kind: worst chance of accepting a foreign message (0 when N < 2).
  double lambda2_hat = 0.0;
  std::pair<std::size_t, std::size_t> worst_second = {0, 0};  // (input, test)
  // acceptance[i][j] = P_i W(D_j); filled when full_matrix was requested.
  std::vector<std::vector<double>> acceptance;
};

// Outcome distribution each message induces on the base measurement:
// q_i(y) = sum_x P_i(x) tr(W_x E_y).  Every acceptance probability of a
// simultaneous code is a subset sum of these rows.
std::vector<FiniteDistribution> message_output_rows(const CQChannel& channel,
                                                    const SimQIDCode& code);

// Exact acceptance probabilities P_i W(D_j) for all ordered pairs.
IDVerification verify_id_code(const CQChannel& channel, const SimQIDCode& code,
                              const IDVerifyOptions& options = {});
IDVerification verify_id_code(const CQChannel& channel,
                              const QIDCodeGeneral& code,
                              const IDVerifyOptions& options = {});

// Turns a transmission code plus a subset family over its message set into
// a simultaneous identification code: P_i uniform on {c_m : m in A_i},
// acceptance subsets the A_i themselves over the code's decoder.
SimQIDCode build_simultaneous_id_code(const QCode& code,
                                      const SetFamily& family);

// Error levels the construction guarantees when the underlying code has
// worst error at most lambda: (lambda, 2 * lambda).
std::pair<double, double> proposition_error_bounds(double lambda);

struct SizeBoundResult {
  // floor(epsilon * 2^((c0 - delta) * n)) and the resulting exponent.
  std::uint64_t inner = 0;
  std::int64_t exponent = 0;  // inner - n
  // True when the bound collapses to N >= 1 (exponent <= 0).
  bool trivial = false;
  BigInt value;  // 2^exponent, or 1 when trivial
};

// Message-count guarantee 2^(floor(epsilon 2^((c0-delta) n)) - n) of the
// construction, evaluated exactly.
SizeBoundResult size_bound_proposition(int n, double c0, double delta,
                                       double epsilon);

}  // namespace qidlab
