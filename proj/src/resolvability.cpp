#include "qidlab/resolvability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qidlab/errors.hpp"
#include "qidlab/parallel.hpp"
#include "qidlab/rng.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

std::int64_t word_space_dim(const CQChannel& channel, int n) {
  std::int64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= channel.dim();
    if (dim > settings().dim_limit) {
      fail_validation(errkind::ResourceLimit,
                      "resolvability: word dimension exceeds limit",
                      static_cast<double>(dim));
    }
  }
  return dim;
}

// Rows of the induced classical channel over the support of the input,
// filled deterministically (states first, then parallel measurement).
std::vector<std::vector<double>> support_rows(const CQChannel& channel,
                                              const SparseDistribution& input,
                                              const POM& pom) {
  if (input.word_length() < 1) {
    fail_validation(errkind::BadParameter,
                    "resolvability: block length must be >= 1");
  }
  if (pom.dim() != word_space_dim(channel, input.word_length())) {
    fail_validation(errkind::DimensionMismatch,
                    "resolvability: measurement dimension must match words");
  }
  std::vector<std::vector<double>> rows(input.support_size());
  WordStateCache cache(channel);
  for (const Word& w : input.words()) cache.state(w);
  parallel_for(input.support_size(), [&](std::size_t i) {
    rows[i] = measure(DensityOperator::trusted(cache.state(input.words()[i])),
                      pom)
                  .masses();
  });
  return rows;
}

std::vector<double> mixture_row(const std::vector<std::vector<double>>& rows,
                                const std::vector<double>& masses,
                                std::size_t outcomes) {
  std::vector<double> mix(outcomes, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t y = 0; y < outcomes; ++y) {
      mix[y] += masses[i] * rows[i][y];
    }
  }
  return mix;
}

double l1(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total;
}

}  // namespace

SparseDistribution MTypeDistribution::to_distribution() const {
  if (sample_count == 0) {
    fail_validation(errkind::BadParameter, "m-type: sample count must be >= 1");
  }
  std::uint64_t total = 0;
  std::vector<std::pair<Word, BigRational>> pairs;
  pairs.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    total += count;
    if (count == 0) continue;
    pairs.emplace_back(word, BigRational(BigInt(count), BigInt(sample_count)));
  }
  if (total != sample_count) {
    fail_validation(errkind::BadParameter,
                    "m-type: counts must sum to the sample count",
                    static_cast<double>(total));
  }
  return SparseDistribution::from_pairs(std::move(pairs));
}

BigInt resolution(const SparseDistribution& input) {
  BigInt result = 1;
  for (const BigRational& mass : input.masses()) {
    // cpp_rational keeps masses in lowest terms.
    result = boost::multiprecision::lcm(result,
                                        boost::multiprecision::denominator(mass));
  }
  return result;
}

double measured_distance(const DensityOperator& rho, const DensityOperator& sigma,
                         const POM& pom) {
  return variational_distance(measure(rho, pom), measure(sigma, pom));
}

std::vector<DensitySample> information_density_enumerate(
    const CQChannel& channel, const SparseDistribution& input, const POM& pom) {
  const std::vector<std::vector<double>> rows = support_rows(channel, input, pom);
  const std::size_t outcomes = pom.outcome_count();
  const std::vector<double> marginal =
      mixture_row(rows, input.mass_doubles(), outcomes);
  const double n = static_cast<double>(input.word_length());

  std::vector<DensitySample> samples;
  double total_mass = 0.0;
  for (std::size_t i = 0; i < input.support_size(); ++i) {
    const double p_mass = input.mass_doubles()[i];
    for (std::size_t y = 0; y < outcomes; ++y) {
      const double joint = p_mass * rows[i][y];
      if (joint <= 0.0) continue;
      require_internal(marginal[y] > 0.0,
                       "density: outcome with joint mass has zero marginal");
      DensitySample sample;
      sample.word = input.words()[i];
      sample.outcome = static_cast<int>(y) + 1;
      sample.density = std::log2(rows[i][y] / marginal[y]) / n;
      sample.joint_mass = joint;
      samples.push_back(std::move(sample));
      total_mass += joint;
    }
  }
  require_internal(std::abs(total_mass - 1.0) <= settings().algebra_tol,
                   "density: joint masses drifted from 1");
  return samples;
}

double sup_information_rate_estimate(const std::vector<DensitySample>& samples,
                                     double delta) {
  if (samples.empty()) {
    fail_validation(errkind::SizeMismatch, "sup rate: no density samples");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    fail_validation(errkind::BadParameter, "sup rate: delta must lie in (0, 1)",
                    delta);
  }
  std::vector<std::pair<double, double>> mass_by_density;
  mass_by_density.reserve(samples.size());
  for (const DensitySample& s : samples) {
    mass_by_density.emplace_back(s.density, s.joint_mass);
  }
  std::sort(mass_by_density.begin(), mass_by_density.end());

  // Walk distinct densities in ascending order; the first whose strict
  // upper tail is within delta is the quantile.
  std::size_t i = 0;
  double tail = 0.0;
  for (const auto& [density, mass] : mass_by_density) tail += mass;
  while (i < mass_by_density.size()) {
    std::size_t j = i;
    double group = 0.0;
    while (j < mass_by_density.size() &&
           mass_by_density[j].first == mass_by_density[i].first) {
      group += mass_by_density[j].second;
      ++j;
    }
    tail -= group;  // mass strictly above this density value
    if (tail <= delta) return mass_by_density[i].first;
    i = j;
  }
  require_internal(false, "sup rate: tail never fell below delta");
  return 0.0;
}

ResolvabilityReport random_selection_resolve(const CQChannel& channel,
                                             const SparseDistribution& input,
                                             const POM& pom,
                                             std::uint64_t sample_count,
                                             int trials, std::uint64_t seed) {
  if (sample_count < 1) {
    fail_validation(errkind::BadParameter, "resolve: need at least one draw");
  }
  if (trials < 1) {
    fail_validation(errkind::BadParameter, "resolve: need at least one trial");
  }
  const std::vector<std::vector<double>> rows = support_rows(channel, input, pom);
  const std::size_t outcomes = pom.outcome_count();
  const std::vector<double> target =
      mixture_row(rows, input.mass_doubles(), outcomes);
  std::vector<double> cumulative = cumulative_sums(input.mass_doubles());
  cumulative.back() = 1.0;

  ResolvabilityReport report;
  report.n = input.word_length();
  report.sample_count = sample_count;
  report.trials = trials;
  report.distances.resize(static_cast<std::size_t>(trials));
  report.resolutions.resize(static_cast<std::size_t>(trials));

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Prng rng = Prng::substream(seed, t);
    std::vector<std::uint64_t> counts(input.support_size(), 0);
    for (std::uint64_t m = 0; m < sample_count; ++m) {
      ++counts[rng.sample_cumulative(cumulative)];
    }
    std::vector<double> empirical(outcomes, 0.0);
    std::uint64_t res = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      const double mass = static_cast<double>(counts[i]) /
                          static_cast<double>(sample_count);
      for (std::size_t y = 0; y < outcomes; ++y) {
        empirical[y] += mass * rows[i][y];
      }
      res = std::lcm(res, sample_count / std::gcd(counts[i], sample_count));
    }
    report.distances[t] = l1(target, empirical);
    report.resolutions[t] = res;
  });

  double sum = 0.0;
  report.min_distance = report.distances.front();
  report.max_distance = report.distances.front();
  for (double d : report.distances) {
    sum += d;
    report.min_distance = std::min(report.min_distance, d);
    report.max_distance = std::max(report.max_distance, d);
  }
  report.mean_distance = sum / static_cast<double>(trials);
  report.rate = std::log2(static_cast<double>(sample_count)) /
                static_cast<double>(report.n);
  return report;
}

MuBoundCheck d1_mu_bound_check(const FiniteDistribution& q,
                               const FiniteDistribution& r, double mu) {
  if (q.size() != r.size()) {
    fail_validation(errkind::DimensionMismatch,
                    "mu bound: outcome counts differ");
  }
  if (!(mu > 0.0)) {
    fail_validation(errkind::BadParameter, "mu bound: mu must be > 0", mu);
  }
  MuBoundCheck check;
  check.lhs = variational_distance(q, r);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double qm = q.masses()[i];
    if (qm <= 0.0) continue;
    const double rm = r.masses()[i];
    if (rm <= 0.0 || std::log2(qm / rm) > mu) {
      check.tail_mass += qm;  // R-null outcomes have infinite log ratio
    }
  }
  check.rhs = (2.0 / std::numbers::log2e) * mu + 2.0 * check.tail_mass;
  check.holds = check.lhs <= check.rhs + 1e-12;
  return check;
}

SeparationCheck id_separation_check(const CQChannel& channel,
                                    const SimQIDCode& code, double lambda1,
                                    double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || lambda1 + lambda2 >= 1.0) {
    fail_validation(errkind::PrerequisiteNotVerified,
                    "separation: requires lambda1 + lambda2 < 1",
                    lambda1 + lambda2);
  }
  if (code.message_count() < 2) {
    fail_validation(errkind::BadParameter,
                    "separation: needs at least two messages");
  }
  const IDVerification verification = verify_id_code(channel, code);
  const double tol = settings().validation_tol;
  if (verification.lambda1_hat > lambda1 + tol) {
    fail_validation(errkind::PrerequisiteNotVerified,
                    "separation: first-kind error exceeds lambda1",
                    verification.lambda1_hat);
  }
  if (verification.lambda2_hat > lambda2 + tol) {
    fail_validation(errkind::PrerequisiteNotVerified,
                    "separation: second-kind error exceeds lambda2",
                    verification.lambda2_hat);
  }

  const std::vector<FiniteDistribution> output =
      message_output_rows(channel, code);
  SeparationCheck check;
  check.threshold = 2.0 * (1.0 - lambda1 - lambda2);
  bool first = true;
  for (std::size_t k = 0; k < output.size(); ++k) {
    for (std::size_t l = k + 1; l < output.size(); ++l) {
      const double distance = variational_distance(output[k], output[l]);
      if (first || distance < check.min_distance) {
        check.min_distance = distance;
        check.argmin = {k + 1, l + 1};
        first = false;
      }
    }
  }
  check.margin = check.min_distance - check.threshold;
  check.ok = check.margin >= -1e-9;
  return check;
}

BigInt mtype_count_bound(std::uint64_t alphabet_size, std::uint64_t n,
                         std::uint64_t sample_count) {
  if (alphabet_size < 1 || n < 1 || sample_count < 1) {
    fail_validation(errkind::BadParameter,
                    "m-type bound: all arguments must be >= 1");
  }
  const long double bits = static_cast<long double>(n) *
                           static_cast<long double>(sample_count) *
                           std::log2l(static_cast<long double>(alphabet_size));
  if (bits > static_cast<long double>(settings().size_bound_max_bits)) {
    fail_validation(errkind::ResourceLimit,
                    "m-type bound: result exceeds the bit cap",
                    static_cast<double>(bits));
  }
  return boost::multiprecision::pow(
      BigInt(alphabet_size), static_cast<unsigned>(n * sample_count));
}

}  // namespace qidlab
