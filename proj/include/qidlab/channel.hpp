#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qidlab/bigint.hpp"
#include "qidlab/core.hpp"

namespace qidlab {

// A word is a finite sequence of letters from {1, ..., alphabet_size};
// words index input sequences, so letters are 1-based throughout the API
// and the file formats.
using Word = std::vector<int>;

// Classical-quantum channel: one density operator per letter, all on the
// same space.  Memoryless block use maps a word to the tensor product of
// its letter states.
class CQChannel {
 public:
  static CQChannel validated(std::vector<DensityOperator> signals);

  int alphabet_size() const { return static_cast<int>(signals_.size()); }
  int dim() const { return signals_.front().dim(); }
  // letter is 1-based.
  const DensityOperator& signal(int letter) const;
  const std::vector<DensityOperator>& signals() const { return signals_; }

  // Content hash over signal matrices; used for cache keys.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  explicit CQChannel(std::vector<DensityOperator> signals);
  std::vector<DensityOperator> signals_;
  std::uint64_t fingerprint_ = 0;
};

// Sparse distribution over words of one fixed length, with exact rational
// masses summing to exactly 1.  Support is kept sorted lexicographically,
// duplicates merged, so equal distributions have equal representations.
class SparseDistribution {
 public:
  static SparseDistribution from_pairs(
      std::vector<std::pair<Word, BigRational>> pairs);
  // Uniform over the multiset of words (duplicates add multiplicity).
  static SparseDistribution uniform_over(const std::vector<Word>& words);
  static SparseDistribution point_mass(Word word);

  int word_length() const { return word_length_; }
  std::size_t support_size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const std::vector<BigRational>& masses() const { return masses_; }
  const std::vector<double>& mass_doubles() const { return mass_doubles_; }

 private:
  SparseDistribution() = default;
  int word_length_ = 0;
  std::vector<Word> words_;
  std::vector<BigRational> masses_;
  std::vector<double> mass_doubles_;
};

// Memoizes word states within the process.  If QIDLAB_CACHE_DIR is set in
// the environment, states also spill to that directory keyed by channel
// fingerprint + word, so separate invocations reuse them.  Thread-safe;
// values are pure functions of (channel, word).
class WordStateCache {
 public:
  explicit WordStateCache(const CQChannel& channel);

  const CMatrix& state(const Word& word);
  std::size_t memory_entries() const { return store_.size(); }

 private:
  const CQChannel* channel_;
  std::map<Word, CMatrix> store_;
  std::mutex lock_;
  std::optional<std::filesystem::path> disk_;
};

// Tensor product of the letter states of `word`; the empty word yields the
// scalar state on a 1-dimensional space.
DensityOperator word_state(const CQChannel& channel, const Word& word);

// sum_x P(x) W_x over the support of P.
DensityOperator mixed_output(const CQChannel& channel,
                             const SparseDistribution& input);

// Holevo quantity chi(P) = H(sum P(x) W_x) - sum P(x) H(W_x) for a
// single-letter distribution over the alphabet.
double holevo_quantity(const CQChannel& channel, const FiniteDistribution& p);

struct CapacityOptions {
  // Grid subdivisions per simplex direction; 0 picks the finest built-in
  // mesh whose point count stays under grid_point_cap.
  int grid_subdivisions = 0;
  std::size_t grid_point_cap = 200000;
  // Pairwise mass-transfer ascent rounds after the grid scan (0 disables).
  int ascent_rounds = 60;
  double ascent_tol = 1e-12;
};

struct CapacityResult {
  double value = 0.0;             // certified lower bound on the capacity
  std::vector<double> argmax;     // distribution achieving `value`
  int grid_subdivisions = 0;
  std::size_t grid_points = 0;
  int ascent_rounds_used = 0;
};

// Maximizes chi over input distributions: deterministic simplex grid scan,
// then pairwise mass-transfer coordinate ascent (chi is concave in P, so
// ascent cannot get trapped).  Every returned value is an achieved chi,
// hence a lower bound on the capacity.
CapacityResult holevo_capacity(const CQChannel& channel,
                               const CapacityOptions& options = {});

// Classical channel induced by measuring word states with a fixed POM.
struct InducedClassicalChannel {
  std::vector<Word> inputs;
  std::vector<std::string> outcome_labels;
  std::vector<FiniteDistribution> rows;  // one row per input word
};

InducedClassicalChannel induced_channel(const CQChannel& channel,
                                        const std::vector<Word>& inputs,
                                        const POM& pom);

}  // namespace qidlab
