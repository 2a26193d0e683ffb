// Command-line front end: loads JSON experiment configs, drives the library,
// and emits reproducible JSON reports.  The report payload is a pure function
// of (config, seed, input files); wall time and thread count live outside it.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"
#include "qidlab/errors.hpp"
#include "qidlab/idcode.hpp"
#include "qidlab/io.hpp"
#include "qidlab/resolvability.hpp"
#include "qidlab/setfamily.hpp"
#include "qidlab/settings.hpp"
#include "qidlab/txcode.hpp"

namespace qidlab {
namespace {

std::string error_message(const ValidationError& e) {
  std::string text = e.what();
  const std::string prefix = e.kind() + ": ";
  if (text.rfind(prefix, 0) == 0) text.erase(0, prefix.size());
  return text;
}

// Re-raises stage failures with the stage name in front so pipeline errors
// say where they happened.
template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    fail_validation(e.kind().c_str(),
                    std::string(name) + " stage: " + error_message(e),
                    e.value());
  }
}

// --- config access ---------------------------------------------------------

const Json& config_at(const Json& config, const std::string& key) {
  if (!config.contains(key)) {
    fail_validation(errkind::ParseError, "config: missing key '" + key + "'");
  }
  return config[key];
}

double config_number(const Json& config, const std::string& key) {
  const Json& j = config_at(config, key);
  if (!j.is_number()) {
    fail_validation(errkind::ParseError, "config." + key + ": expected a number");
  }
  return j.get<double>();
}

double config_number_or(const Json& config, const std::string& key,
                        double fallback) {
  return config.contains(key) ? config_number(config, key) : fallback;
}

std::int64_t config_int(const Json& config, const std::string& key) {
  const Json& j = config_at(config, key);
  if (!j.is_number_integer()) {
    fail_validation(errkind::ParseError,
                    "config." + key + ": expected an integer");
  }
  return j.get<std::int64_t>();
}

std::int64_t config_int_or(const Json& config, const std::string& key,
                           std::int64_t fallback) {
  return config.contains(key) ? config_int(config, key) : fallback;
}

std::int64_t config_positive(const Json& config, const std::string& key) {
  std::int64_t value = config_int(config, key);
  if (value < 1) {
    fail_validation(errkind::BadParameter,
                    "config." + key + ": expected a positive integer",
                    static_cast<double>(value));
  }
  return value;
}

std::string config_string(const Json& config, const std::string& key) {
  const Json& j = config_at(config, key);
  if (!j.is_string()) {
    fail_validation(errkind::ParseError, "config." + key + ": expected a string");
  }
  return j.get<std::string>();
}

bool config_bool_or(const Json& config, const std::string& key, bool fallback) {
  if (!config.contains(key)) return fallback;
  const Json& j = config[key];
  if (!j.is_boolean()) {
    fail_validation(errkind::ParseError,
                    "config." + key + ": expected a boolean");
  }
  return j.get<bool>();
}

// --- shared command state ---------------------------------------------------

struct CommandContext {
  Json config;
  std::uint64_t seed = 0;
  Json inputs = Json::object();  // file provenance, keyed by role
};

Json file_provenance(const std::string& path) {
  return Json{{"path", path}, {"fnv64", to_hex(fnv64_file(path))}};
}

Json load_input_file(CommandContext& ctx, const std::string& role,
                     const std::string& path) {
  ctx.inputs[role] = file_provenance(path);
  return load_json_file(path);
}

CQChannel load_channel(CommandContext& ctx) {
  const std::string path = config_string(ctx.config, "channel");
  return stage("load-channel", [&] {
    return channel_from_json(load_input_file(ctx, "channel", path));
  });
}

// Every word of length n over {1..alphabet}, lexicographic.
std::vector<Word> all_words(int alphabet, int n) {
  double count = std::pow(static_cast<double>(alphabet), n);
  if (count > static_cast<double>(settings().support_cap)) {
    fail_validation(errkind::ResourceLimit,
                    "word enumeration: alphabet^n exceeds support_cap", count);
  }
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(count));
  Word w(static_cast<std::size_t>(n), 1);
  while (true) {
    words.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet) {
      w[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return words;
}

// Uniform input over A^n unless the config names a distribution file.
SparseDistribution load_input_distribution(CommandContext& ctx,
                                           const CQChannel& channel, int n) {
  if (ctx.config.contains("input")) {
    const std::string path = config_string(ctx.config, "input");
    SparseDistribution input = stage("load-input", [&] {
      return distribution_from_json(load_input_file(ctx, "input", path));
    });
    if (input.word_length() != n) {
      fail_validation(errkind::SizeMismatch,
                      "input distribution word length does not match n");
    }
    return input;
  }
  return SparseDistribution::uniform_over(all_words(channel.alphabet_size(), n));
}

// n-fold product of the single-letter computational basis unless the config
// names a measurement file.
POM load_word_pom(CommandContext& ctx, const CQChannel& channel, int n) {
  if (ctx.config.contains("pom")) {
    const std::string path = config_string(ctx.config, "pom");
    return stage("load-pom", [&] {
      return pom_from_json(load_input_file(ctx, "pom", path));
    });
  }
  POM letter = POM::computational_basis(channel.dim());
  POM out = letter;
  for (int i = 1; i < n; ++i) out = pom_tensor(out, letter);
  return out;
}

Json words_to_json(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(w);
  return out;
}

void maybe_write_artifact(const CommandContext& ctx, const std::string& key,
                          const Json& artifact) {
  if (ctx.config.contains(key)) {
    write_json_file(config_string(ctx.config, key), artifact);
  }
}

// --- commands ---------------------------------------------------------------

Json run_validate_channel(CommandContext& ctx) {
  require_keys(ctx.config, {"channel"}, {"seed"}, "config");
  CQChannel channel = load_channel(ctx);
  return Json{{"alphabet_size", channel.alphabet_size()},
              {"dim", channel.dim()},
              {"fingerprint", to_hex(channel.fingerprint())},
              {"valid", true}};
}

Json run_capacity(CommandContext& ctx) {
  require_keys(ctx.config, {"channel"},
               {"seed", "grid_subdivisions", "ascent_rounds"}, "config");
  CQChannel channel = load_channel(ctx);
  CapacityOptions options;
  options.grid_subdivisions =
      static_cast<int>(config_int_or(ctx.config, "grid_subdivisions", 0));
  options.ascent_rounds =
      static_cast<int>(config_int_or(ctx.config, "ascent_rounds", 60));
  CapacityResult r = holevo_capacity(channel, options);
  return Json{{"capacity", r.value},
              {"argmax", r.argmax},
              {"grid_subdivisions", r.grid_subdivisions},
              {"grid_points", r.grid_points},
              {"ascent_rounds_used", r.ascent_rounds_used}};
}

Json run_build_tx_code(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "n", "method"},
               {"seed", "message_count", "target_error", "rate", "gamma",
                "alpha", "retries", "input", "pom", "code_out"},
               "config");
  CQChannel channel = load_channel(ctx);
  const int n = static_cast<int>(config_positive(ctx.config, "n"));
  const std::string method = config_string(ctx.config, "method");

  if (method == "exhaustive") {
    const auto message_count =
        static_cast<std::uint64_t>(config_positive(ctx.config, "message_count"));
    const double target = config_number_or(ctx.config, "target_error", 0.0);
    ExhaustiveSearchResult search = stage("transmission-code", [&] {
      return build_code_exhaustive(channel, n, message_count, target);
    });
    Json result{{"method", method},
                {"achieved", search.achieved},
                {"best_error", search.best_error},
                {"tuples_tried", search.tuples_tried},
                {"exhausted", search.exhausted}};
    if (search.code) {
      CodeVerification check = verify_qcode(channel, *search.code);
      result["codewords"] = words_to_json(search.code->codewords);
      result["success"] = check.success;
      result["worst_error"] = check.worst_error;
      result["average_error"] = check.average_error;
      maybe_write_artifact(ctx, "code_out", qcode_to_json(*search.code));
    }
    return result;
  }

  if (method == "random_coding") {
    RandomCodingOptions options;
    options.rate = config_number(ctx.config, "rate");
    options.gamma = config_number(ctx.config, "gamma");
    options.alpha = config_number(ctx.config, "alpha");
    options.target_error = config_number_or(ctx.config, "target_error", 1.0);
    options.retries = static_cast<int>(config_int_or(ctx.config, "retries", 0));
    options.seed = ctx.seed;
    SparseDistribution input = load_input_distribution(ctx, channel, n);
    POM base = load_word_pom(ctx, channel, n);
    RandomCodingResult r = stage("transmission-code", [&] {
      return build_code_random_coding(channel, input, base, options);
    });
    std::vector<std::size_t> set_sizes;
    set_sizes.reserve(r.decoding_sets.size());
    for (const auto& s : r.decoding_sets) set_sizes.push_back(s.size());
    maybe_write_artifact(ctx, "code_out", qcode_to_json(r.code));
    return Json{{"method", method},
                {"achieved", r.achieved},
                {"worst_error", r.worst_error},
                {"message_count", r.message_count},
                {"good_word_count", r.good_word_count},
                {"good_mass", r.good_mass},
                {"attempts_used", r.attempts_used},
                {"best_attempt", r.best_attempt},
                {"codewords", words_to_json(r.code.codewords)},
                {"success", r.success},
                {"decoding_set_sizes", set_sizes}};
  }

  fail_validation(errkind::BadParameter,
                  "config.method: expected 'exhaustive' or 'random_coding'");
}

CandidateOrder order_from_config(const Json& config) {
  const std::string name =
      config.contains("order") ? config_string(config, "order") : "lex";
  if (name == "lex") return CandidateOrder::Lexicographic;
  if (name == "random") return CandidateOrder::SeededRandom;
  fail_validation(errkind::BadParameter,
                  "config.order: expected 'lex' or 'random'");
}

Json lemma_to_json(const LemmaBound& bound) {
  return Json{{"precondition_holds", bound.precondition_holds},
              {"guaranteed", to_string(bound.guaranteed)},
              {"exclusion_per_set", to_string(bound.exclusion_per_set)},
              {"counting_bound", to_string(bound.counting_bound)}};
}

Json run_build_family(CommandContext& ctx) {
  require_keys(ctx.config, {"ground_size", "epsilon", "lambda"},
               {"seed", "target", "order", "candidate_budget", "family_out"},
               "config");
  FamilyParams params;
  params.ground_size =
      static_cast<std::uint64_t>(config_positive(ctx.config, "ground_size"));
  params.epsilon = config_number(ctx.config, "epsilon");
  params.lambda = config_number(ctx.config, "lambda");
  params.validate();

  GreedyOptions options;
  options.target =
      static_cast<std::uint64_t>(config_int_or(ctx.config, "target", 0));
  options.order = order_from_config(ctx.config);
  options.seed = ctx.seed;
  options.candidate_budget =
      static_cast<std::uint64_t>(config_int_or(ctx.config, "candidate_budget", 0));

  GreedyResult r = stage("family", [&] { return build_family_greedy(params, options); });
  FamilyCheck check = verify_family(r.family);
  maybe_write_artifact(ctx, "family_out", family_to_json(r.family));
  return Json{{"set_size", params.set_size()},
              {"max_intersection", params.max_intersection()},
              {"lemma", lemma_to_json(lemma_bound(params))},
              {"family_size", r.family.sets.size()},
              {"reached_target", r.reached_target},
              {"target_unreachable", r.target_unreachable},
              {"certified_maximal", r.certified_maximal},
              {"candidates_scanned", r.candidates_scanned},
              {"verified", Json{{"ok", check.ok},
                                {"worst_intersection", check.worst_intersection}}},
              {"sets", r.family.sets}};
}

Json verification_to_json(const IDVerification& v, bool full_matrix) {
  Json out{{"lambda1_hat", v.lambda1_hat},
           {"worst_first", v.worst_first},
           {"lambda2_hat", v.lambda2_hat},
           {"worst_second", Json::array({v.worst_second.first,
                                         v.worst_second.second})}};
  if (full_matrix) out["acceptance"] = v.acceptance;
  return out;
}

Json size_bound_to_json(const SizeBoundResult& bound) {
  Json out{{"inner", bound.inner},
           {"exponent", bound.exponent},
           {"trivial", bound.trivial}};
  // The exact count is astronomically wide for large exponents; keep the
  // payload bounded and let the exponent carry the information.
  if (bound.exponent <= 4096) {
    out["value"] = to_string(bound.value);
  } else {
    out["value"] = nullptr;
  }
  return out;
}

Json run_build_id_code(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "n", "lambda1", "lambda2", "epsilon"},
               {"seed", "code", "message_count", "target_error", "delta",
                "family_target", "order", "candidate_budget", "full_matrix",
                "code_out", "family_out", "id_code_out"},
               "config");
  CQChannel channel = load_channel(ctx);
  const int n = static_cast<int>(config_positive(ctx.config, "n"));
  const double lambda1 = config_number(ctx.config, "lambda1");
  const double lambda2 = config_number(ctx.config, "lambda2");
  const double lambda = std::min(lambda1, lambda2 / 2.0);
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    fail_validation(errkind::BadParameter,
                    "min(lambda1, lambda2/2) must lie in (0, 1)", lambda);
  }
  const double epsilon = config_number(ctx.config, "epsilon");

  QCode code;
  Json tx = Json::object();
  if (ctx.config.contains("code")) {
    const std::string path = config_string(ctx.config, "code");
    code = stage("load-code", [&] {
      return qcode_from_json(load_input_file(ctx, "code", path));
    });
    if (code.word_length() != n) {
      fail_validation(errkind::SizeMismatch,
                      "code file word length does not match n");
    }
    CodeVerification check = stage("transmission-code", [&] {
      return verify_qcode(channel, code);
    });
    tx = Json{{"message_count", code.message_count()},
              {"worst_error", check.worst_error},
              {"average_error", check.average_error},
              {"source", "file"}};
  } else {
    const auto message_count =
        static_cast<std::uint64_t>(config_positive(ctx.config, "message_count"));
    const double target = config_number_or(ctx.config, "target_error", lambda);
    ExhaustiveSearchResult search = stage("transmission-code", [&] {
      return build_code_exhaustive(channel, n, message_count, target);
    });
    if (!search.achieved || !search.code) {
      fail_validation(errkind::BadParameter,
                      "transmission-code stage: no code met the target error "
                      "(best " + std::to_string(search.best_error) + ")",
                      search.best_error);
    }
    code = *search.code;
    tx = Json{{"message_count", code.message_count()},
              {"worst_error", search.best_error},
              {"tuples_tried", search.tuples_tried},
              {"source", "exhaustive"}};
  }
  maybe_write_artifact(ctx, "code_out", qcode_to_json(code));

  FamilyParams params;
  params.ground_size = code.message_count();
  params.epsilon = epsilon;
  params.lambda = lambda;
  stage("family", [&] { params.validate(); return 0; });

  GreedyOptions options;
  options.target =
      static_cast<std::uint64_t>(config_int_or(ctx.config, "family_target", 0));
  options.order = order_from_config(ctx.config);
  options.seed = ctx.seed;
  options.candidate_budget =
      static_cast<std::uint64_t>(config_int_or(ctx.config, "candidate_budget", 0));
  GreedyResult family = stage("family", [&] {
    return build_family_greedy(params, options);
  });
  maybe_write_artifact(ctx, "family_out", family_to_json(family.family));

  SimQIDCode id = stage("assemble", [&] {
    return build_simultaneous_id_code(code, family.family);
  });
  maybe_write_artifact(ctx, "id_code_out", idcode_to_json(id));

  IDVerifyOptions verify_options;
  verify_options.full_matrix = config_bool_or(ctx.config, "full_matrix", false);
  IDVerification v = stage("verify", [&] {
    return verify_id_code(channel, id, verify_options);
  });

  const auto bounds = proposition_error_bounds(lambda);
  const bool bounds_hold = v.lambda1_hat <= bounds.first + 1e-9 &&
                           v.lambda2_hat <= bounds.second + 1e-9;

  const double c0 = stage("capacity", [&] {
    return holevo_capacity(channel).value;
  });
  const double delta = config_number_or(ctx.config, "delta", 0.2);
  SizeBoundResult size_bound = stage("size-bound", [&] {
    return size_bound_proposition(n, c0, delta, epsilon);
  });

  Json result{{"lambda", lambda},
              {"tx", tx},
              {"family_size", family.family.sets.size()},
              {"certified_maximal", family.certified_maximal},
              {"id_message_count", id.message_count()},
              {"verification", verification_to_json(v, verify_options.full_matrix)},
              {"proposition_bounds", Json::array({bounds.first, bounds.second})},
              {"bounds_hold", bounds_hold},
              {"capacity_estimate", c0},
              {"delta", delta},
              {"size_bound", size_bound_to_json(size_bound)}};
  return result;
}

Json run_verify_id_code(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "id_code"}, {"seed", "full_matrix"},
               "config");
  CQChannel channel = load_channel(ctx);
  const std::string path = config_string(ctx.config, "id_code");
  SimQIDCode code = stage("load-id-code", [&] {
    return idcode_from_json(load_input_file(ctx, "id_code", path));
  });
  IDVerifyOptions options;
  options.full_matrix = config_bool_or(ctx.config, "full_matrix", false);
  IDVerification v = stage("verify", [&] {
    return verify_id_code(channel, code, options);
  });
  Json result = verification_to_json(v, options.full_matrix);
  result["message_count"] = code.message_count();
  result["n"] = code.n;
  return result;
}

Json run_resolvability(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "n"},
               {"seed", "input", "pom", "delta", "ladder", "trials",
                "density_csv"},
               "config");
  CQChannel channel = load_channel(ctx);
  const int n = static_cast<int>(config_positive(ctx.config, "n"));
  const double delta = config_number_or(ctx.config, "delta", 0.05);
  SparseDistribution input = load_input_distribution(ctx, channel, n);
  POM pom = load_word_pom(ctx, channel, n);

  std::vector<DensitySample> samples = stage("density", [&] {
    return information_density_enumerate(channel, input, pom);
  });
  const double sup_rate = sup_information_rate_estimate(samples, delta);
  if (ctx.config.contains("density_csv")) {
    write_density_csv(config_string(ctx.config, "density_csv"), samples, pom);
  }

  std::vector<std::uint64_t> ladder{16, 64, 256, 1024, 4096};
  if (ctx.config.contains("ladder")) {
    const Json& raw = ctx.config["ladder"];
    if (!raw.is_array() || raw.empty()) {
      fail_validation(errkind::ParseError,
                      "config.ladder: expected a nonempty array of integers");
    }
    ladder.clear();
    for (const Json& entry : raw) {
      if (!entry.is_number_integer() || entry.get<std::int64_t>() < 1) {
        fail_validation(errkind::ParseError,
                        "config.ladder: expected positive integers");
      }
      ladder.push_back(entry.get<std::uint64_t>());
    }
  }
  const int trials = static_cast<int>(config_int_or(ctx.config, "trials", 32));

  Json rungs = Json::array();
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    ResolvabilityReport r = stage("selection", [&] {
      return random_selection_resolve(channel, input, pom, ladder[i], trials,
                                      ctx.seed + i);
    });
    rungs.push_back(Json{{"sample_count", r.sample_count},
                         {"rate", r.rate},
                         {"mean_distance", r.mean_distance},
                         {"min_distance", r.min_distance},
                         {"max_distance", r.max_distance},
                         {"distances", r.distances},
                         {"resolutions", r.resolutions}});
  }

  return Json{{"n", n},
              {"delta", delta},
              {"sample_count", samples.size()},
              {"sup_information_rate", sup_rate},
              {"input_resolution", to_string(resolution(input))},
              {"trials", trials},
              {"ladder", std::move(rungs)}};
}

Json run_separation(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "id_code", "lambda1", "lambda2"},
               {"seed"}, "config");
  CQChannel channel = load_channel(ctx);
  const std::string path = config_string(ctx.config, "id_code");
  SimQIDCode code = stage("load-id-code", [&] {
    return idcode_from_json(load_input_file(ctx, "id_code", path));
  });
  SeparationCheck check = stage("separation", [&] {
    return id_separation_check(channel, code,
                               config_number(ctx.config, "lambda1"),
                               config_number(ctx.config, "lambda2"));
  });
  return Json{{"min_distance", check.min_distance},
              {"argmin", Json::array({check.argmin.first, check.argmin.second})},
              {"threshold", check.threshold},
              {"margin", check.margin},
              {"ok", check.ok}};
}

Json run_info_density(CommandContext& ctx) {
  require_keys(ctx.config, {"channel", "n"},
               {"seed", "input", "pom", "delta", "csv"}, "config");
  CQChannel channel = load_channel(ctx);
  const int n = static_cast<int>(config_positive(ctx.config, "n"));
  const double delta = config_number_or(ctx.config, "delta", 0.05);
  SparseDistribution input = load_input_distribution(ctx, channel, n);
  POM pom = load_word_pom(ctx, channel, n);
  std::vector<DensitySample> samples = stage("density", [&] {
    return information_density_enumerate(channel, input, pom);
  });
  double lo = 0.0;
  double hi = 0.0;
  if (!samples.empty()) {
    lo = samples.front().density;
    hi = samples.front().density;
    for (const DensitySample& s : samples) {
      lo = std::min(lo, s.density);
      hi = std::max(hi, s.density);
    }
  }
  if (ctx.config.contains("csv")) {
    write_density_csv(config_string(ctx.config, "csv"), samples, pom);
  }
  return Json{{"n", n},
              {"delta", delta},
              {"sample_count", samples.size()},
              {"sup_information_rate",
               sup_information_rate_estimate(samples, delta)},
              {"min_density", lo},
              {"max_density", hi}};
}

// --- driver ------------------------------------------------------------------

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::vector<std::string> overrides;
};

void apply_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    fail_validation(errkind::BadParameter,
                    "--tolerance expects name=value, got '" + text + "'");
  }
  const std::string name = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  Settings& s = settings();

  auto as_double = [&] {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size()) {
      fail_validation(errkind::BadParameter,
                      "--tolerance " + name + ": bad number '" + value + "'");
    }
    return v;
  };
  auto as_count = [&] {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size() || v < 0) {
      fail_validation(errkind::BadParameter,
                      "--tolerance " + name + ": bad count '" + value + "'");
    }
    return static_cast<std::uint64_t>(v);
  };

  if (name == "validation_tol") s.validation_tol = as_double();
  else if (name == "algebra_tol") s.algebra_tol = as_double();
  else if (name == "rational_tol") s.rational_tol = as_double();
  else if (name == "dim_limit") s.dim_limit = static_cast<int>(as_count());
  else if (name == "alphabet_cap") s.alphabet_cap = static_cast<int>(as_count());
  else if (name == "support_cap") s.support_cap = as_count();
  else if (name == "exhaustive_tuple_cap") s.exhaustive_tuple_cap = as_count();
  else if (name == "family_candidate_cap") s.family_candidate_cap = as_count();
  else if (name == "brute_force_candidate_cap") s.brute_force_candidate_cap = as_count();
  else if (name == "brute_force_node_cap") s.brute_force_node_cap = as_count();
  else if (name == "random_coding_retries") s.random_coding_retries = static_cast<int>(as_count());
  else if (name == "size_bound_max_bits") s.size_bound_max_bits = as_count();
  else {
    fail_validation(errkind::BadParameter,
                    "--tolerance: unknown setting '" + name + "'");
  }
}

int run_command(const std::string& name, const CommonFlags& flags,
                Json (*command)(CommandContext&)) {
  const auto start = std::chrono::steady_clock::now();
  reset_settings();
  settings().threads = flags.threads;
  for (const std::string& text : flags.overrides) apply_override(text);

  CommandContext ctx;
  ctx.config = load_json_file(flags.config_path);
  if (!ctx.config.is_object()) {
    fail_validation(errkind::ParseError, "config: expected a JSON object");
  }
  if (flags.seed_set) {
    ctx.seed = flags.seed;
  } else if (ctx.config.contains("seed")) {
    std::int64_t seed = config_int(ctx.config, "seed");
    if (seed < 0) {
      fail_validation(errkind::BadParameter, "config.seed: expected >= 0");
    }
    ctx.seed = static_cast<std::uint64_t>(seed);
  }

  Json result = command(ctx);
  Json payload{{"command", name},
               {"config", ctx.config},
               {"seed", ctx.seed},
               {"tool_version", kToolVersion},
               {"settings_hash", settings_fingerprint()},
               {"inputs", ctx.inputs},
               {"result", std::move(result)}};
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  Json report{{"payload", std::move(payload)},
              {"meta", Json{{"wall_ms", wall.count()},
                            {"threads", settings().threads}}}};
  if (flags.out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_json_file(flags.out_path, report);
  }
  return 0;
}

struct CommandSpec {
  const char* name;
  const char* help;
  Json (*run)(CommandContext&);
};

constexpr CommandSpec kCommands[] = {
    {"validate-channel", "Load a channel file and validate every signal",
     run_validate_channel},
    {"capacity", "Maximize the Holevo quantity over input distributions",
     run_capacity},
    {"build-tx-code", "Construct a transmission code (exhaustive or random coding)",
     run_build_tx_code},
    {"build-family", "Construct an overlap-bounded set family greedily",
     run_build_family},
    {"build-id-code", "Code + family + assembly + verification pipeline",
     run_build_id_code},
    {"verify-id-code", "Recompute identification error levels for a stored code",
     run_verify_id_code},
    {"resolvability", "Density spectrum and random-selection distance ladder",
     run_resolvability},
    {"separation", "Pairwise output-distribution separation for an ID code",
     run_separation},
    {"info-density", "Information density samples and sup-rate estimate",
     run_info_density},
};

}  // namespace
}  // namespace qidlab

int main(int argc, char** argv) {
  using qidlab::CommonFlags;

  CLI::App app{"Numerical laboratory for identification coding over "
               "classical-quantum channels"};
  app.require_subcommand(1);

  CommonFlags flags;
  qidlab::Json (*selected)(qidlab::CommandContext&) = nullptr;
  std::string selected_name;

  for (const auto& spec : qidlab::kCommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", flags.config_path, "Experiment config (JSON)")
        ->required();
    sub->add_option("--out", flags.out_path, "Report path (default: stdout)");
    auto* seed = sub->add_option("--seed", flags.seed, "PRNG seed (overrides config)");
    sub->add_option("--threads", flags.threads, "Worker thread cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", flags.overrides,
                    "Override a named setting, name=value (repeatable)");
    sub->callback([&flags, &selected, &selected_name, spec, seed] {
      flags.seed_set = seed->count() > 0;
      selected = spec.run;
      selected_name = spec.name;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return qidlab::run_command(selected_name, flags, selected);
  } catch (const qidlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const qidlab::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
