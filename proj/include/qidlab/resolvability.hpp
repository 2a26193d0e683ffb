#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qidlab/bigint.hpp"
#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"
#include "qidlab/idcode.hpp"

namespace qidlab {

// Empirical distribution of M draws: every mass is a multiple of 1/M.
struct MTypeDistribution {
  std::uint64_t sample_count = 0;          // M
  std::map<Word, std::uint64_t> counts;    // word -> occurrences, sum = M

  SparseDistribution to_distribution() const;
};

// Minimal M such that P is M-type: the lcm of the reduced denominators of
// its masses.  Exact because SparseDistribution masses are rationals.
BigInt resolution(const SparseDistribution& input);

// Distance the measurement E can see between two states:
// d1(measure(rho, E), measure(sigma, E)), in [0, 2].
double measured_distance(const DensityOperator& rho, const DensityOperator& sigma,
                         const POM& pom);

struct DensitySample {
  Word word;
  int outcome = 0;        // 1-based index into the POM
  double density = 0.0;   // (1/n) log2( W_x(E_y) / PW(E_y) )
  double joint_mass = 0.0;  // P(x) * W_x(E_y)
};

// All (word, outcome) pairs with positive joint mass, with their
// per-letter information densities.  Joint masses sum to 1.
std::vector<DensitySample> information_density_enumerate(
    const CQChannel& channel, const SparseDistribution& input, const POM& pom);

// Smallest beta whose upper tail {density > beta} holds joint mass at most
// delta: a (1 - delta)-quantile of the density distribution.
double sup_information_rate_estimate(const std::vector<DensitySample>& samples,
                                     double delta);

struct ResolvabilityReport {
  int n = 0;
  std::uint64_t sample_count = 0;  // M
  int trials = 0;
  std::vector<double> distances;         // per-trial d_E(PW, empirical W)
  std::vector<std::uint64_t> resolutions;  // per-trial reduced resolution
  double mean_distance = 0.0;
  double min_distance = 0.0;
  double max_distance = 0.0;
  double rate = 0.0;  // log2(M) / n
};

// Repeatedly draws M words i.i.d. from the input, forms the empirical
// M-type distribution, and measures how far its output lies from the true
// mixture under the POM.  Trial t uses the PRNG substream (seed, t), so
// results are identical at any thread count.
ResolvabilityReport random_selection_resolve(const CQChannel& channel,
                                             const SparseDistribution& input,
                                             const POM& pom,
                                             std::uint64_t sample_count,
                                             int trials, std::uint64_t seed);

struct MuBoundCheck {
  double lhs = 0.0;        // d1(Q, R)
  double rhs = 0.0;        // (2/log2 e) mu + 2 Q[log2 Q/R > mu]
  double tail_mass = 0.0;  // Q[log2 Q/R > mu]
  bool holds = false;
};

// Evaluates both sides of d1(Q, R) <= (2/log2 e) mu + 2 Q[log2 Q/R > mu].
// Q(x) > 0 with R(x) = 0 counts toward the tail (log of infinity).
MuBoundCheck d1_mu_bound_check(const FiniteDistribution& q,
                               const FiniteDistribution& r, double mu);

struct SeparationCheck {
  double min_distance = 0.0;
  std::pair<std::size_t, std::size_t> argmin = {0, 0};  // 1-based messages
  double threshold = 0.0;  // 2 (1 - lambda1 - lambda2)
  double margin = 0.0;     // min_distance - threshold
  bool ok = false;
};

// Converse ingredient: distinct messages of a working identification code
// must induce output distributions the base measurement separates by at
// least 2(1 - lambda1 - lambda2).  Requires lambda1 + lambda2 < 1 and a
// code whose verified errors meet (lambda1, lambda2).
SeparationCheck id_separation_check(const CQChannel& channel,
                                    const SimQIDCode& code, double lambda1,
                                    double lambda2);

// |A|^(n M): how many M-type distributions over words could exist at most.
BigInt mtype_count_bound(std::uint64_t alphabet_size, std::uint64_t n,
                         std::uint64_t sample_count);

}  // namespace qidlab
