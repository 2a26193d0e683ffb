#include "qidlab/idcode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "qidlab/errors.hpp"
#include "qidlab/parallel.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

double clamp_probability(double p) {
  require_internal(p >= -settings().algebra_tol &&
                       p <= 1.0 + settings().algebra_tol,
                   "acceptance probability drifted outside [0, 1]");
  return std::min(1.0, std::max(0.0, p));
}

void check_subsets(const std::vector<std::vector<int>>& subsets,
                   std::size_t outcome_count) {
  for (const std::vector<int>& subset : subsets) {
    std::vector<bool> seen(outcome_count + 1, false);
    for (int outcome : subset) {
      if (outcome < 1 || static_cast<std::size_t>(outcome) > outcome_count) {
        fail_validation(errkind::IndexOutOfRange,
                        "id code: subset outcome outside base measurement",
                        static_cast<double>(outcome));
      }
      if (seen[static_cast<std::size_t>(outcome)]) {
        fail_validation(errkind::BadParameter,
                        "id code: repeated outcome in subset",
                        static_cast<double>(outcome));
      }
      seen[static_cast<std::size_t>(outcome)] = true;
    }
  }
}

std::int64_t word_space_dim(const CQChannel& channel, int n) {
  std::int64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= channel.dim();
    if (dim > settings().dim_limit) {
      fail_validation(errkind::ResourceLimit,
                      "id code: word dimension exceeds limit",
                      static_cast<double>(dim));
    }
  }
  return dim;
}

void check_inputs(const std::vector<SparseDistribution>& inputs, int n) {
  if (inputs.empty()) {
    fail_validation(errkind::SizeMismatch, "id code: needs at least one message");
  }
  for (const SparseDistribution& p : inputs) {
    if (p.word_length() != n) {
      fail_validation(errkind::SizeMismatch,
                      "id code: input word length must equal n",
                      static_cast<double>(p.word_length()));
    }
  }
}

// Extracts both error kinds from an acceptance-probability evaluator.
IDVerification extract_errors(
    std::size_t message_count, const IDVerifyOptions& options,
    const std::function<double(std::size_t, std::size_t)>& acceptance) {
  IDVerification verification;
  verification.lambda1_hat = 0.0;
  verification.worst_first = 1;
  for (std::size_t i = 1; i <= message_count; ++i) {
    const double miss = 1.0 - acceptance(i, i);
    if (miss > verification.lambda1_hat) {
      verification.lambda1_hat = miss;
      verification.worst_first = i;
    }
  }
  verification.lambda2_hat = 0.0;
  verification.worst_second = {0, 0};
  for (std::size_t i = 1; i <= message_count; ++i) {
    for (std::size_t j = 1; j <= message_count; ++j) {
      if (i == j) continue;
      const double accept = acceptance(i, j);
      if (verification.worst_second.first == 0 ||
          accept > verification.lambda2_hat) {
        verification.lambda2_hat = accept;
        verification.worst_second = {i, j};
      }
    }
  }
  if (message_count < 2) {
    verification.lambda2_hat = 0.0;  // no foreign message to accept
    verification.worst_second = {0, 0};
  }
  if (options.full_matrix) {
    verification.acceptance.assign(message_count,
                                   std::vector<double>(message_count, 0.0));
    for (std::size_t i = 1; i <= message_count; ++i) {
      for (std::size_t j = 1; j <= message_count; ++j) {
        verification.acceptance[i - 1][j - 1] = acceptance(i, j);
      }
    }
  }
  return verification;
}

}  // namespace

Effect SimQIDCode::message_effect(std::size_t i) const {
  if (i < 1 || i > subsets.size()) {
    fail_validation(errkind::IndexOutOfRange, "id code: message index",
                    static_cast<double>(i));
  }
  return coarsen(base, subsets[i - 1]);
}

std::vector<FiniteDistribution> message_output_rows(const CQChannel& channel,
                                                    const SimQIDCode& code) {
  check_inputs(code.inputs, code.n);
  if (code.subsets.size() != code.inputs.size()) {
    fail_validation(errkind::SizeMismatch,
                    "id code: one outcome subset per message");
  }
  check_subsets(code.subsets, code.base.outcome_count());
  if (code.base.dim() != word_space_dim(channel, code.n)) {
    fail_validation(errkind::DimensionMismatch,
                    "id code: base measurement dimension must match words");
  }

  std::map<Word, std::size_t> word_index;
  for (const SparseDistribution& p : code.inputs) {
    for (const Word& w : p.words()) {
      word_index.emplace(w, word_index.size());
    }
  }
  std::vector<const Word*> union_words(word_index.size());
  for (const auto& [word, index] : word_index) union_words[index] = &word;

  std::vector<std::vector<double>> rows(union_words.size());
  {
    WordStateCache cache(channel);
    for (const auto* w : union_words) cache.state(*w);  // fill deterministically
    parallel_for(union_words.size(), [&](std::size_t k) {
      rows[k] =
          measure(DensityOperator::trusted(cache.state(*union_words[k])),
                  code.base)
              .masses();
    });
  }

  const std::size_t outcomes = code.base.outcome_count();
  const std::size_t messages = code.message_count();
  std::vector<std::vector<double>> outcome_mass(
      messages, std::vector<double>(outcomes, 0.0));
  parallel_for(messages, [&](std::size_t i) {
    const SparseDistribution& p = code.inputs[i];
    for (std::size_t s = 0; s < p.support_size(); ++s) {
      const std::vector<double>& row = rows[word_index.at(p.words()[s])];
      const double mass = p.mass_doubles()[s];
      for (std::size_t y = 0; y < outcomes; ++y) {
        outcome_mass[i][y] += mass * row[y];
      }
    }
  });

  std::vector<FiniteDistribution> result;
  result.reserve(messages);
  for (std::size_t i = 0; i < messages; ++i) {
    result.push_back(FiniteDistribution::trusted(std::move(outcome_mass[i])));
  }
  return result;
}

IDVerification verify_id_code(const CQChannel& channel, const SimQIDCode& code,
                              const IDVerifyOptions& options) {
  // All acceptance probabilities factor through the outcome distributions
  // q_i = (P_i W)(E_.), so one row table covers every pair.
  const std::vector<FiniteDistribution> output = message_output_rows(channel, code);

  const std::size_t messages = code.message_count();
  auto acceptance = [&](std::size_t i, std::size_t j) {
    double total = 0.0;
    for (int outcome : code.subsets[j - 1]) {
      total += output[i - 1].masses()[static_cast<std::size_t>(outcome - 1)];
    }
    return clamp_probability(total);
  };
  return extract_errors(messages, options, acceptance);
}

IDVerification verify_id_code(const CQChannel& channel,
                              const QIDCodeGeneral& code,
                              const IDVerifyOptions& options) {
  check_inputs(code.inputs, code.n);
  if (code.effects.size() != code.inputs.size()) {
    fail_validation(errkind::SizeMismatch, "id code: one effect per message");
  }
  const std::int64_t dim = word_space_dim(channel, code.n);
  for (const Effect& e : code.effects) {
    if (e.dim() != dim) {
      fail_validation(errkind::DimensionMismatch,
                      "id code: effect dimension must match words");
    }
  }

  const std::size_t messages = code.message_count();
  std::vector<CMatrix> outputs(messages);
  for (std::size_t i = 0; i < messages; ++i) {
    outputs[i] = mixed_output(channel, code.inputs[i]).matrix();
  }
  std::vector<std::vector<double>> table(messages,
                                         std::vector<double>(messages, 0.0));
  parallel_for(messages, [&](std::size_t i) {
    for (std::size_t j = 0; j < messages; ++j) {
      table[i][j] = clamp_probability(
          trace_product_hermitian(outputs[i], code.effects[j].matrix()));
    }
  });
  auto acceptance = [&](std::size_t i, std::size_t j) {
    return table[i - 1][j - 1];
  };
  return extract_errors(messages, options, acceptance);
}

SimQIDCode build_simultaneous_id_code(const QCode& code,
                                      const SetFamily& family) {
  if (family.params.ground_size != code.message_count()) {
    fail_validation(errkind::SizeMismatch,
                    "id code: family ground set must index the codewords",
                    static_cast<double>(family.params.ground_size));
  }
  const FamilyCheck check = verify_family(family);
  if (!check.ok) {
    fail_validation(errkind::BadParameter,
                    "id code: family violates its intersection bound",
                    static_cast<double>(check.worst_intersection));
  }
  if (family.sets.empty()) {
    fail_validation(errkind::SizeMismatch, "id code: family has no sets");
  }

  SimQIDCode id_code;
  id_code.n = code.word_length();
  id_code.base = code.decoder;
  id_code.subsets = family.sets;
  id_code.inputs.reserve(family.sets.size());
  for (const std::vector<int>& subset : family.sets) {
    std::vector<Word> support;
    support.reserve(subset.size());
    for (int m : subset) {
      support.push_back(code.codewords[static_cast<std::size_t>(m - 1)]);
    }
    id_code.inputs.push_back(SparseDistribution::uniform_over(support));
  }
  return id_code;
}

std::pair<double, double> proposition_error_bounds(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail_validation(errkind::BadParameter,
                    "error bounds: lambda must lie in [0, 1]", lambda);
  }
  return {lambda, 2.0 * lambda};
}

SizeBoundResult size_bound_proposition(int n, double c0, double delta,
                                       double epsilon) {
  if (n < 1) {
    fail_validation(errkind::BadParameter,
                    "size bound: block length must be >= 1",
                    static_cast<double>(n));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    fail_validation(errkind::BadParameter,
                    "size bound: epsilon must lie in (0, 1)", epsilon);
  }
  if (!(c0 >= 0.0) || !(delta >= 0.0)) {
    fail_validation(errkind::BadParameter,
                    "size bound: rates must be nonnegative");
  }

  const double exponent_real = (c0 - delta) * static_cast<double>(n);
  // The inner floor must be exact; past 2^52 doubles cannot represent the
  // product to unit precision, and the resulting count would not fit in
  // memory anyway.
  if (exponent_real > 52.0) {
    fail_validation(errkind::ResourceLimit,
                    "size bound: inner exponent too large to evaluate exactly",
                    exponent_real);
  }
  double product = epsilon * std::exp2(exponent_real);
  const double snapped = std::round(product);
  if (std::abs(product - snapped) < 1e-9) product = snapped;

  SizeBoundResult result;
  result.inner = static_cast<std::uint64_t>(std::floor(product));
  result.exponent = static_cast<std::int64_t>(result.inner) - n;
  if (result.exponent <= 0) {
    result.trivial = true;
    result.value = 1;
    return result;
  }
  if (static_cast<std::uint64_t>(result.exponent) >
      settings().size_bound_max_bits) {
    fail_validation(errkind::ResourceLimit,
                    "size bound: result exceeds the bit cap",
                    static_cast<double>(result.exponent));
  }
  result.value = pow2(static_cast<std::uint64_t>(result.exponent));
  return result;
}

}  // namespace qidlab
