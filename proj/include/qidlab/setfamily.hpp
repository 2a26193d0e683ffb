#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qidlab/bigint.hpp"

namespace qidlab {

// Parameters for families of a-subsets of {1, ..., M} with all pairwise
// intersections strictly below lambda * a, where a = floor(epsilon * M).
struct FamilyParams {
  std::uint64_t ground_size = 0;  // M
  double epsilon = 0.0;           // set-size fraction, in (0, 1)
  double lambda = 0.0;            // overlap fraction, in (0, 1)

  // floor(epsilon * M), with a snap guard so that products meant to be
  // integers (0.2 * 20) are not pushed down by float error.
  std::uint64_t set_size() const;

  // Largest integer intersection allowed by |A cap B| < lambda * a.
  // May be -1 (lambda = 0), in which case no two distinct sets coexist.
  std::int64_t max_intersection() const;

  // lambda * log2(1/epsilon - 1) > 2, the regime where the existence
  // guarantee below applies.
  bool precondition_holds() const;

  void validate() const;
};

struct SetFamily {
  FamilyParams params;
  // Each set: sorted, distinct, 1-based elements of {1..M}, size a.
  std::vector<std::vector<int>> sets;
};

// Size guarantees for such families.
struct LemmaBound {
  bool precondition_holds = false;
  // N >= ceil(2^a / M); meaningful only when the precondition holds.
  BigInt guaranteed;
  // Counting argument: any maximal family has N >= ceil(C(M, a) / S) where
  // S = a * C(M, a - ceil(lambda a)) * 2^a bounds how many candidate sets
  // one member can exclude.  Holds with no precondition.
  BigInt exclusion_per_set;  // S
  BigInt counting_bound;     // ceil(C(M, a) / S)
};

LemmaBound lemma_bound(const FamilyParams& params);

enum class CandidateOrder { Lexicographic, SeededRandom };

struct GreedyOptions {
  std::uint64_t target = 0;  // stop once this many sets found; 0 = no cap
  CandidateOrder order = CandidateOrder::Lexicographic;
  std::uint64_t seed = 0;          // used by SeededRandom only
  std::uint64_t candidate_budget = 0;  // 0 = settings().family_candidate_cap
};

struct GreedyResult {
  SetFamily family;
  bool reached_target = false;
  // Scan ended (exhaustion or budget) with the target still unmet; the
  // family is returned anyway.
  bool target_unreachable = false;
  // True when every candidate set was scanned and none could be added, so
  // the family is maximal (no superset family exists with these members).
  bool certified_maximal = false;
  std::uint64_t candidates_scanned = 0;
};

// First-fit scan over candidate a-subsets in the requested order; keeps a
// candidate iff its intersection with every kept set stays within bound.
GreedyResult build_family_greedy(const FamilyParams& params,
                                 const GreedyOptions& options = {});

struct FamilyCheck {
  bool ok = false;
  std::int64_t worst_intersection = 0;          // largest pairwise overlap
  std::pair<std::size_t, std::size_t> witness;  // 1-based set indices
};

// Re-checks the pairwise intersection bound; malformed sets (wrong size,
// out-of-range or repeated elements) are validation errors.
FamilyCheck verify_family(const SetFamily& family);

// Exact maximum family size by branch and bound over all candidate sets.
// Refuses instances with more than brute_force_candidate_cap candidates
// and aborts at brute_force_node_cap nodes.
std::uint64_t brute_force_max_family(std::uint64_t ground_size,
                                     std::uint64_t set_size, double lambda);

}  // namespace qidlab
