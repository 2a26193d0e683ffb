#include "qidlab/setfamily.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "qidlab/errors.hpp"
#include "qidlab/rng.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

// Products like 0.2 * 20 land a hair below their intended integer value;
// snap anything within 1e-9 of an integer before floor/ceil.
double snap_integral(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-9 ? r : x;
}

using Mask = std::vector<std::uint64_t>;

std::size_t mask_words(std::uint64_t ground_size) {
  return static_cast<std::size_t>((ground_size + 63) / 64);
}

void fill_mask(const std::vector<int>& set, Mask& mask) {
  std::fill(mask.begin(), mask.end(), 0);
  for (int e : set) {
    const std::uint64_t bit = static_cast<std::uint64_t>(e - 1);
    mask[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
}

// |a cap b| capped at allowed + 1 for an early verdict.
std::int64_t intersection_over(const Mask& a, const Mask& b,
                               std::int64_t allowed) {
  std::int64_t count = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    count += std::popcount(a[w] & b[w]);
    if (count > allowed) return count;
  }
  return count;
}

// Lexicographic successor of an a-combination of {1..M}; false when done.
bool next_combination(std::vector<int>& combo, int ground_size) {
  const int a = static_cast<int>(combo.size());
  int i = a - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == ground_size - (a - 1 - i)) {
    --i;
  }
  if (i < 0) return false;
  ++combo[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < a; ++j) {
    combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

std::vector<int> first_combination(std::uint64_t a) {
  std::vector<int> combo(static_cast<std::size_t>(a));
  for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = static_cast<int>(i) + 1;
  return combo;
}

// Uniform a-subset of {1..M} (Floyd); returned sorted.
std::vector<int> random_subset(Prng& rng, std::uint64_t ground_size,
                               std::uint64_t a) {
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(a));
  for (std::uint64_t j = ground_size - a + 1; j <= ground_size; ++j) {
    const int t = static_cast<int>(rng.bounded(j)) + 1;
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(static_cast<int>(j));
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

// --- FamilyParams ------------------------------------------------------------

std::uint64_t FamilyParams::set_size() const {
  return static_cast<std::uint64_t>(
      std::floor(snap_integral(epsilon * static_cast<double>(ground_size))));
}

std::int64_t FamilyParams::max_intersection() const {
  const double product =
      snap_integral(lambda * static_cast<double>(set_size()));
  // Intersections are strictly below lambda*a: an exactly integral product
  // is itself excluded.
  if (product == std::floor(product)) {
    return static_cast<std::int64_t>(product) - 1;
  }
  return static_cast<std::int64_t>(std::floor(product));
}

bool FamilyParams::precondition_holds() const {
  if (epsilon <= 0.0 || epsilon >= 1.0) return false;
  return lambda * std::log2(1.0 / epsilon - 1.0) > 2.0;
}

void FamilyParams::validate() const {
  if (ground_size < 1) {
    fail_validation(errkind::BadParameter, "family: ground set is empty");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    fail_validation(errkind::BadParameter,
                    "family: epsilon must lie in (0, 1)", epsilon);
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    fail_validation(errkind::BadParameter,
                    "family: lambda must lie in (0, 1)", lambda);
  }
  if (set_size() < 1) {
    fail_validation(errkind::BadParameter,
                    "family: epsilon * M must be at least 1",
                    static_cast<double>(set_size()));
  }
}

// --- lemma_bound ---------------------------------------------------------------

LemmaBound lemma_bound(const FamilyParams& params) {
  params.validate();
  const std::uint64_t m = params.ground_size;
  const std::uint64_t a = params.set_size();
  const std::uint64_t lambda_a_ceil = static_cast<std::uint64_t>(
      std::ceil(snap_integral(params.lambda * static_cast<double>(a))));

  LemmaBound bound;
  bound.precondition_holds = params.precondition_holds();
  if (bound.precondition_holds) {
    bound.guaranteed = ceil_div(pow2(a), BigInt(m));
  }
  bound.exclusion_per_set = BigInt(a) * binomial(m, a - lambda_a_ceil) * pow2(a);
  bound.counting_bound = ceil_div(binomial(m, a), bound.exclusion_per_set);
  return bound;
}

// --- greedy builder --------------------------------------------------------------

GreedyResult build_family_greedy(const FamilyParams& params,
                                 const GreedyOptions& options) {
  params.validate();
  const std::uint64_t m = params.ground_size;
  const std::uint64_t a = params.set_size();
  const std::int64_t allowed = params.max_intersection();
  const std::uint64_t budget = options.candidate_budget != 0
                                   ? options.candidate_budget
                                   : settings().family_candidate_cap;
  const BigInt total_candidates = binomial(m, a);

  GreedyResult result;
  result.family.params = params;
  std::vector<Mask> kept;
  const std::size_t words = mask_words(m);
  Mask scratch(words, 0);

  auto try_accept = [&](const std::vector<int>& combo) {
    fill_mask(combo, scratch);
    for (const Mask& other : kept) {
      if (intersection_over(scratch, other, allowed) > allowed) return;
    }
    kept.push_back(scratch);
    result.family.sets.push_back(combo);
  };

  auto target_hit = [&] {
    return options.target != 0 && result.family.sets.size() >= options.target;
  };

  bool scanned_everything = false;
  bool stopped_by_target = false;

  if (options.order == CandidateOrder::Lexicographic) {
    std::vector<int> combo = first_combination(a);
    for (;;) {
      if (result.candidates_scanned >= budget) break;
      ++result.candidates_scanned;
      try_accept(combo);
      if (target_hit()) {
        stopped_by_target = true;
        break;
      }
      if (!next_combination(combo, static_cast<int>(m))) {
        scanned_everything = true;
        break;
      }
    }
  } else {
    // Materialize + shuffle when the space is small enough to hold; fall
    // back to i.i.d. subset draws (no maximality certificate) otherwise.
    constexpr std::uint64_t kMaterializeCap = 2'000'000;
    Prng rng(options.seed);
    if (total_candidates <= kMaterializeCap) {
      std::vector<std::vector<int>> all;
      all.reserve(static_cast<std::size_t>(total_candidates));
      std::vector<int> combo = first_combination(a);
      do {
        all.push_back(combo);
      } while (next_combination(combo, static_cast<int>(m)));
      for (std::size_t i = all.size(); i > 1; --i) {
        std::swap(all[i - 1], all[static_cast<std::size_t>(rng.bounded(i))]);
      }
      for (const std::vector<int>& candidate : all) {
        if (result.candidates_scanned >= budget) break;
        ++result.candidates_scanned;
        try_accept(candidate);
        if (target_hit()) {
          stopped_by_target = true;
          break;
        }
      }
      scanned_everything =
          !stopped_by_target && result.candidates_scanned == all.size();
    } else {
      while (result.candidates_scanned < budget && !target_hit()) {
        ++result.candidates_scanned;
        try_accept(random_subset(rng, m, a));
      }
      stopped_by_target = target_hit();
    }
  }

  result.reached_target = target_hit();
  result.target_unreachable = options.target != 0 && !result.reached_target;
  result.certified_maximal = scanned_everything && !stopped_by_target;
  return result;
}

// --- verify_family ----------------------------------------------------------------

FamilyCheck verify_family(const SetFamily& family) {
  family.params.validate();
  const std::uint64_t m = family.params.ground_size;
  const std::uint64_t a = family.params.set_size();

  for (const std::vector<int>& set : family.sets) {
    if (set.size() != a) {
      fail_validation(errkind::SizeMismatch,
                      "family: set size must equal floor(epsilon * M)",
                      static_cast<double>(set.size()));
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] < 1 || static_cast<std::uint64_t>(set[i]) > m) {
        fail_validation(errkind::IndexOutOfRange,
                        "family: element outside ground set",
                        static_cast<double>(set[i]));
      }
      if (i > 0 && set[i] <= set[i - 1]) {
        fail_validation(errkind::BadParameter,
                        "family: set elements must be sorted and distinct");
      }
    }
  }

  const std::int64_t allowed = family.params.max_intersection();
  const std::size_t words = mask_words(m);
  std::vector<Mask> masks(family.sets.size(), Mask(words, 0));
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    fill_mask(family.sets[i], masks[i]);
  }

  FamilyCheck check;
  check.worst_intersection = -1;
  check.witness = {0, 0};
  check.ok = true;
  const std::int64_t no_cap = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const std::int64_t overlap = intersection_over(masks[i], masks[j], no_cap);
      if (overlap > check.worst_intersection) {
        check.worst_intersection = overlap;
        check.witness = {i + 1, j + 1};
      }
      if (overlap > allowed) check.ok = false;
    }
  }
  if (check.worst_intersection < 0) check.worst_intersection = 0;  // < 2 sets
  return check;
}

// --- brute force ---------------------------------------------------------------------

std::uint64_t brute_force_max_family(std::uint64_t ground_size,
                                     std::uint64_t set_size, double lambda) {
  if (ground_size < 1 || set_size < 1 || set_size > ground_size) {
    fail_validation(errkind::BadParameter,
                    "brute force: need 1 <= a <= M");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    fail_validation(errkind::BadParameter,
                    "brute force: lambda must lie in (0, 1)", lambda);
  }
  const BigInt total = binomial(ground_size, set_size);
  if (total > settings().brute_force_candidate_cap) {
    fail_validation(errkind::ResourceLimit,
                    "brute force: too many candidate sets",
                    static_cast<double>(total));
  }

  const double product =
      snap_integral(lambda * static_cast<double>(set_size));
  const std::int64_t allowed =
      product == std::floor(product)
          ? static_cast<std::int64_t>(product) - 1
          : static_cast<std::int64_t>(std::floor(product));
  if (allowed < 0) return 1;  // no two distinct sets may coexist

  std::vector<Mask> candidates;
  candidates.reserve(static_cast<std::size_t>(total));
  const std::size_t words = mask_words(ground_size);
  {
    std::vector<int> combo = first_combination(set_size);
    Mask mask(words, 0);
    do {
      fill_mask(combo, mask);
      candidates.push_back(mask);
    } while (next_combination(combo, static_cast<int>(ground_size)));
  }
  const std::size_t count = candidates.size();

  // Packing bound: members pairwise share at most `allowed` elements, so
  // their (allowed+1)-subsets are pairwise distinct.
  std::uint64_t upper = count;
  if (static_cast<std::uint64_t>(allowed) + 1 <= set_size) {
    const BigInt packing =
        binomial(ground_size, static_cast<std::uint64_t>(allowed) + 1) /
        binomial(set_size, static_cast<std::uint64_t>(allowed) + 1);
    if (packing < upper) upper = static_cast<std::uint64_t>(packing);
  }

  std::uint64_t best = 0;
  std::uint64_t nodes = 0;
  std::vector<const Mask*> chosen;
  bool proven_optimal = false;

  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (proven_optimal) return;
    if (++nodes > settings().brute_force_node_cap) {
      fail_validation(errkind::ResourceLimit,
                      "brute force: node budget exhausted",
                      static_cast<double>(nodes));
    }
    if (chosen.size() > best) {
      best = chosen.size();
      if (best == upper) {
        proven_optimal = true;
        return;
      }
    }
    for (std::size_t idx = start; idx < count; ++idx) {
      if (chosen.size() + (count - idx) <= best) break;
      bool compatible = true;
      for (const Mask* other : chosen) {
        if (intersection_over(candidates[idx], *other, allowed) > allowed) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      chosen.push_back(&candidates[idx]);
      dfs(idx + 1);
      chosen.pop_back();
      if (proven_optimal) return;
    }
  };
  dfs(0);
  return best;
}

}  // namespace qidlab
