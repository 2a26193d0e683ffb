#include "qidlab/txcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qidlab/errors.hpp"
#include "qidlab/parallel.hpp"
#include "qidlab/rng.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

void check_codewords(const std::vector<Word>& codewords) {
  if (codewords.empty()) {
    fail_validation(errkind::SizeMismatch, "code: needs at least one codeword");
  }
  const std::size_t n = codewords.front().size();
  if (n == 0) {
    fail_validation(errkind::BadParameter, "code: codewords must be nonempty");
  }
  for (const Word& w : codewords) {
    if (w.size() != n) {
      fail_validation(errkind::SizeMismatch,
                      "code: codewords must share one length");
    }
  }
}

std::int64_t word_dim(const CQChannel& channel, std::size_t n) {
  std::int64_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dim *= channel.dim();
    if (dim > settings().dim_limit) {
      fail_validation(errkind::ResourceLimit,
                      "code: word dimension exceeds limit",
                      static_cast<double>(dim));
    }
  }
  return dim;
}

double clamp_probability(double p) {
  require_internal(p >= -settings().algebra_tol &&
                       p <= 1.0 + settings().algebra_tol,
                   "probability drifted outside [0, 1]");
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

CodeVerification verify_qcode(const CQChannel& channel, const QCode& code) {
  check_codewords(code.codewords);
  const std::int64_t dim = word_dim(channel, code.codewords.front().size());
  if (code.decoder.dim() != dim) {
    fail_validation(errkind::DimensionMismatch,
                    "code: decoder dimension must match word states");
  }
  const std::size_t expected =
      code.message_count() + (code.has_fail_outcome ? 1 : 0);
  if (code.decoder.outcome_count() != expected) {
    fail_validation(errkind::SizeMismatch,
                    "code: decoder outcome count must match messages",
                    static_cast<double>(code.decoder.outcome_count()));
  }

  WordStateCache cache(channel);
  CodeVerification verification;
  verification.success.resize(code.message_count());
  for (std::size_t m = 0; m < code.message_count(); ++m) {
    const CMatrix& state = cache.state(code.codewords[m]);
    verification.success[m] = clamp_probability(
        trace_product_hermitian(state, code.decoder.effects()[m]));
  }
  double worst = 0.0;
  double total = 0.0;
  for (double s : verification.success) {
    worst = std::max(worst, 1.0 - s);
    total += 1.0 - s;
  }
  verification.worst_error = worst;
  verification.average_error =
      total / static_cast<double>(code.message_count());
  return verification;
}

POM square_root_decoder(const CQChannel& channel,
                        const std::vector<Word>& codewords) {
  check_codewords(codewords);
  WordStateCache cache(channel);
  const CMatrix& first = cache.state(codewords.front());
  const Eigen::Index dim = first.rows();

  CMatrix total = CMatrix::Zero(dim, dim);
  for (const Word& w : codewords) total += cache.state(w);
  const CMatrix root = inv_sqrt_psd(total);

  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  effects.reserve(codewords.size() + 1);
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (std::size_t m = 0; m < codewords.size(); ++m) {
    CMatrix e = root * cache.state(codewords[m]) * root;
    e = ((e + e.adjoint()) / 2.0).eval();  // strip float drift
    sum += e;
    effects.push_back(std::move(e));
    labels.push_back(std::to_string(m + 1));
  }
  // The decoded effects sum to the projector onto the span of the word
  // states; the remainder is the inconclusive outcome.
  CMatrix fail = CMatrix::Identity(dim, dim) - sum;
  fail = ((fail + fail.adjoint()) / 2.0).eval();
  effects.push_back(std::move(fail));
  labels.emplace_back("fail");
  return POM::trusted(std::move(effects), std::move(labels));
}

// --- exhaustive search -----------------------------------------------------

namespace {

Word word_from_index(std::uint64_t index, int alphabet, std::size_t n) {
  Word w(n);
  for (std::size_t pos = n; pos-- > 0;) {
    w[pos] = static_cast<int>(index % static_cast<std::uint64_t>(alphabet)) + 1;
    index /= static_cast<std::uint64_t>(alphabet);
  }
  return w;
}

}  // namespace

ExhaustiveSearchResult build_code_exhaustive(const CQChannel& channel, int n,
                                             std::uint64_t message_count,
                                             double target_error) {
  if (n < 1) {
    fail_validation(errkind::BadParameter, "exhaustive: block length must be >= 1",
                    static_cast<double>(n));
  }
  if (message_count < 1) {
    fail_validation(errkind::BadParameter, "exhaustive: need at least one message");
  }
  if (!(target_error >= 0.0 && target_error <= 1.0)) {
    fail_validation(errkind::BadParameter, "exhaustive: target error in [0, 1]",
                    target_error);
  }
  word_dim(channel, static_cast<std::size_t>(n));

  std::uint64_t total_words = 1;
  for (int i = 0; i < n; ++i) {
    total_words *= static_cast<std::uint64_t>(channel.alphabet_size());
  }

  ExhaustiveSearchResult result;
  if (message_count > total_words) {
    result.exhausted = true;  // no tuple of distinct codewords exists
    return result;
  }

  WordStateCache cache(channel);
  const double slack = 1e-12;

  // Lexicographic combinations of word indices; the square-root decoder is
  // symmetric under codeword order, so unordered scans lose nothing.
  std::vector<std::uint64_t> combo(message_count);
  for (std::uint64_t i = 0; i < message_count; ++i) combo[i] = i;

  const std::uint64_t budget = settings().exhaustive_tuple_cap;

  auto advance = [&]() -> bool {
    std::size_t i = combo.size();
    while (i-- > 0) {
      if (combo[i] != total_words - (combo.size() - i)) {
        ++combo[i];
        for (std::size_t j = i + 1; j < combo.size(); ++j) {
          combo[j] = combo[j - 1] + 1;
        }
        return true;
      }
    }
    return false;
  };

  for (;;) {
    if (result.tuples_tried >= budget) break;
    ++result.tuples_tried;

    std::vector<Word> codewords;
    codewords.reserve(message_count);
    for (std::uint64_t index : combo) {
      codewords.push_back(
          word_from_index(index, channel.alphabet_size(),
                          static_cast<std::size_t>(n)));
    }
    QCode candidate{codewords, square_root_decoder(channel, codewords), true};
    const CodeVerification check = verify_qcode(channel, candidate);
    if (check.worst_error < result.best_error) {
      result.best_error = check.worst_error;
      result.code = std::move(candidate);
      if (result.best_error <= target_error + slack) {
        result.achieved = true;
        result.exhausted = !advance();
        break;
      }
    }
    if (!advance()) {
      result.exhausted = true;
      break;
    }
  }
  return result;
}

// --- random coding -----------------------------------------------------------

RandomCodingResult build_code_random_coding(const CQChannel& channel,
                                            const SparseDistribution& input,
                                            const POM& measurement,
                                            const RandomCodingOptions& options) {
  if (!(options.gamma > 0.0)) {
    fail_validation(errkind::BadParameter, "random coding: gamma must be > 0",
                    options.gamma);
  }
  if (!(options.alpha > 0.0 && options.alpha <= 1.0)) {
    fail_validation(errkind::BadParameter, "random coding: alpha in (0, 1]",
                    options.alpha);
  }
  if (!(options.rate >= 0.0)) {
    fail_validation(errkind::BadParameter, "random coding: rate must be >= 0",
                    options.rate);
  }
  if (!(options.target_error >= 0.0 && options.target_error <= 1.0)) {
    fail_validation(errkind::BadParameter, "random coding: target error in [0, 1]",
                    options.target_error);
  }
  const std::size_t n = static_cast<std::size_t>(input.word_length());
  if (n < 1) {
    fail_validation(errkind::BadParameter,
                    "random coding: block length must be >= 1");
  }
  const std::int64_t dim = word_dim(channel, n);
  if (measurement.dim() != dim) {
    fail_validation(errkind::DimensionMismatch,
                    "random coding: measurement dimension must match words");
  }

  const double exponent = static_cast<double>(n) * options.rate;
  if (exponent >= 40.0) {
    fail_validation(errkind::ResourceLimit,
                    "random coding: 2^(n rate) messages is out of reach",
                    exponent);
  }
  const std::uint64_t message_count =
      static_cast<std::uint64_t>(std::exp2(exponent));
  const std::uint64_t outcome_count = measurement.outcome_count();
  const std::uint64_t entry_budget = std::uint64_t{1} << 26;
  const std::uint64_t entries_per_effect =
      static_cast<std::uint64_t>(dim) * static_cast<std::uint64_t>(dim);
  if (message_count > entry_budget / entries_per_effect) {
    fail_validation(errkind::ResourceLimit,
                    "random coding: decoder would not fit in memory",
                    static_cast<double>(message_count));
  }

  // Rows of the induced classical channel over the support of P.
  const std::size_t support = input.support_size();
  std::vector<std::vector<double>> rows(support);
  {
    WordStateCache cache(channel);
    parallel_for(support, [&](std::size_t i) {
      rows[i] = measure(DensityOperator::trusted(cache.state(input.words()[i])),
                        measurement)
                    .masses();
    });
  }

  std::vector<double> marginal(outcome_count, 0.0);
  const std::vector<double>& mass = input.mass_doubles();
  for (std::size_t i = 0; i < support; ++i) {
    for (std::size_t y = 0; y < outcome_count; ++y) {
      marginal[y] += mass[i] * rows[i][y];
    }
  }

  // Per-word outcome sets where the per-letter information density clears
  // rate + gamma, and the mass each word keeps on its own set.
  const double threshold = options.rate + options.gamma;
  std::vector<std::vector<int>> threshold_sets(support);
  std::vector<double> retained(support, 0.0);
  for (std::size_t i = 0; i < support; ++i) {
    for (std::size_t y = 0; y < outcome_count; ++y) {
      if (rows[i][y] <= 0.0 || marginal[y] <= 0.0) continue;
      const double density =
          std::log2(rows[i][y] / marginal[y]) / static_cast<double>(n);
      if (density > threshold) {
        threshold_sets[i].push_back(static_cast<int>(y) + 1);
        retained[i] += rows[i][y];
      }
    }
  }

  std::vector<std::size_t> good;
  double good_mass = 0.0;
  for (std::size_t i = 0; i < support; ++i) {
    if (retained[i] >= options.alpha / 2.0) {
      good.push_back(i);
      good_mass += mass[i];
    }
  }
  if (good.empty() || good_mass <= 0.0) {
    fail_validation(errkind::EmptyGoodSet,
                    "random coding: no word retains alpha/2 of its mass",
                    options.alpha / 2.0);
  }

  std::vector<double> conditional(good.size());
  for (std::size_t k = 0; k < good.size(); ++k) {
    conditional[k] = mass[good[k]] / good_mass;
  }
  std::vector<double> cumulative = cumulative_sums(conditional);
  cumulative.back() = 1.0;

  const int retries = options.retries > 0 ? options.retries
                                          : settings().random_coding_retries;

  RandomCodingResult result;
  result.message_count = message_count;
  result.good_word_count = good.size();
  result.good_mass = good_mass;
  result.worst_error = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> best_draw;
  for (int attempt = 0; attempt < retries; ++attempt) {
    Prng rng = Prng::substream(options.seed, static_cast<std::uint64_t>(attempt));
    std::vector<std::size_t> draw(message_count);
    for (std::uint64_t m = 0; m < message_count; ++m) {
      draw[m] = good[rng.sample_cumulative(cumulative)];
    }

    // Disjointify in draw order and read successes off the rows.
    std::vector<char> taken(outcome_count, 0);
    double worst = 0.0;
    for (std::uint64_t m = 0; m < message_count; ++m) {
      double success = 0.0;
      for (int outcome : threshold_sets[draw[m]]) {
        if (taken[static_cast<std::size_t>(outcome - 1)]) continue;
        success += rows[draw[m]][static_cast<std::size_t>(outcome - 1)];
      }
      for (int outcome : threshold_sets[draw[m]]) {
        taken[static_cast<std::size_t>(outcome - 1)] = 1;
      }
      worst = std::max(worst, 1.0 - success);
    }

    result.attempts_used = attempt + 1;
    if (worst < result.worst_error) {
      result.worst_error = worst;
      result.best_attempt = attempt + 1;
      best_draw = std::move(draw);
      if (worst <= options.target_error) break;
    }
  }
  result.achieved = result.worst_error <= options.target_error;

  // Materialize the decoder for the best attempt only.
  std::vector<char> taken(outcome_count, 0);
  result.decoding_sets.resize(message_count);
  result.threshold_sets.resize(message_count);
  result.success.resize(message_count);
  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  effects.reserve(message_count + 1);
  for (std::uint64_t m = 0; m < message_count; ++m) {
    const std::size_t word_index = best_draw[m];
    result.threshold_sets[m] = threshold_sets[word_index];
    double success = 0.0;
    for (int outcome : threshold_sets[word_index]) {
      if (taken[static_cast<std::size_t>(outcome - 1)]) continue;
      taken[static_cast<std::size_t>(outcome - 1)] = 1;
      result.decoding_sets[m].push_back(outcome);
      success += rows[word_index][static_cast<std::size_t>(outcome - 1)];
    }
    result.success[m] = clamp_probability(success);
    effects.push_back(coarsen(measurement, result.decoding_sets[m]).matrix());
    labels.push_back(std::to_string(m + 1));
  }
  std::vector<int> rest;
  for (std::size_t y = 0; y < outcome_count; ++y) {
    if (!taken[y]) rest.push_back(static_cast<int>(y) + 1);
  }
  effects.push_back(coarsen(measurement, rest).matrix());
  labels.emplace_back("fail");

  result.code.codewords.reserve(message_count);
  for (std::uint64_t m = 0; m < message_count; ++m) {
    result.code.codewords.push_back(input.words()[best_draw[m]]);
  }
  result.code.decoder = POM::trusted(std::move(effects), std::move(labels));
  result.code.has_fail_outcome = true;
  return result;
}

}  // namespace qidlab
