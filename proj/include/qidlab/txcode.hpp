#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"

namespace qidlab {

// Block transmission code: M codewords of length n plus a decoding POM on
// the word space.  Decoder outcome m (1-based) decides message m; when
// has_fail_outcome is set the final outcome is inconclusive and counts as
// an error for every message.
struct QCode {
  std::vector<Word> codewords;
  POM decoder;
  bool has_fail_outcome = false;

  int word_length() const {
    return static_cast<int>(codewords.front().size());
  }
  std::size_t message_count() const { return codewords.size(); }
};

struct CodeVerification {
  std::vector<double> success;  // tr(W_cm E_m) per message
  double worst_error = 0.0;     // max_m (1 - success[m])
  double average_error = 0.0;
};

// Recomputes every per-message success probability from scratch.
CodeVerification verify_qcode(const CQChannel& channel, const QCode& code);

// Square-root decoder for the given codewords: with S = sum_m W_cm,
// E_m = S^{-1/2} W_cm S^{-1/2} plus a fail effect completing the POM.
POM square_root_decoder(const CQChannel& channel,
                        const std::vector<Word>& codewords);

struct ExhaustiveSearchResult {
  bool achieved = false;           // found a code meeting target_error
  std::optional<QCode> code;       // best code seen (least worst error)
  double best_error = 1.0;
  std::uint64_t tuples_tried = 0;
  bool exhausted = false;          // candidate space fully scanned
};

// Scans codeword combinations in lexicographic order, decoding each with
// the square-root decoder, until one meets target_error or the tuple
// budget runs out.  Ties resolve to the first combination scanned.
ExhaustiveSearchResult build_code_exhaustive(const CQChannel& channel, int n,
                                             std::uint64_t message_count,
                                             double target_error);

struct RandomCodingOptions {
  double rate = 0.0;    // bits per letter; M = floor(2^(n * rate))
  double gamma = 0.0;   // density threshold slack, > 0
  double alpha = 0.0;   // good-word mass floor, in (0, 1]
  double target_error = 1.0;  // accept an attempt at or below this
  std::uint64_t seed = 0;
  int retries = 0;      // 0 = settings().random_coding_retries
};

struct RandomCodingResult {
  QCode code;                     // best attempt
  std::vector<double> success;    // per message
  double worst_error = 1.0;
  bool achieved = false;
  // 1-based outcome indices of the base measurement:
  std::vector<std::vector<int>> threshold_sets;  // D(c_m) before disjointify
  std::vector<std::vector<int>> decoding_sets;   // after disjointify
  std::size_t good_word_count = 0;  // |G| for the input distribution
  double good_mass = 0.0;           // P(G)
  std::uint64_t message_count = 0;
  int attempts_used = 0;
  int best_attempt = 0;  // 1-based attempt index of the returned code
};

// Random-coding construction against a fixed base measurement: keep the
// outcomes where the per-letter information density of (P, measurement)
// exceeds rate + gamma, restrict P to words retaining at least alpha/2 of
// their outcome mass there, draw codewords from that restriction, and
// disjointify the per-codeword outcome sets in draw order into a decoder.
// Raises EmptyGoodSet when no word qualifies.
RandomCodingResult build_code_random_coding(const CQChannel& channel,
                                            const SparseDistribution& input,
                                            const POM& measurement,
                                            const RandomCodingOptions& options);

}  // namespace qidlab
