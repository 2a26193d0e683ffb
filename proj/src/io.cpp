#include "qidlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "qidlab/errors.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

std::string to_hex(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  fail_validation(errkind::ParseError, message);
}

double number_at(const Json& j, const std::string& context) {
  if (!j.is_number()) parse_fail(context + ": expected a number");
  return j.get<double>();
}

std::int64_t integer_at(const Json& j, const std::string& context) {
  if (!j.is_number_integer()) parse_fail(context + ": expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t positive_at(const Json& j, const std::string& context) {
  std::int64_t value = integer_at(j, context);
  if (value < 1) parse_fail(context + ": expected a positive integer");
  return value;
}

// Square matrix of the declared dimension, or ParseError.
CMatrix square_matrix_at(const Json& j, std::int64_t dim,
                         const std::string& context) {
  CMatrix m = matrix_from_json(j);
  if (m.rows() != m.cols() || m.rows() != dim) {
    parse_fail(context + ": expected a " + std::to_string(dim) + "x" +
               std::to_string(dim) + " matrix");
  }
  return m;
}

Word word_at(const Json& j, const std::string& context) {
  if (!j.is_array()) parse_fail(context + ": expected an array of letters");
  Word word;
  word.reserve(j.size());
  for (const Json& letter : j) {
    word.push_back(static_cast<int>(integer_at(letter, context)));
  }
  return word;
}

std::vector<int> index_set_at(const Json& j, const std::string& context) {
  if (!j.is_array()) parse_fail(context + ": expected an array of indices");
  std::vector<int> set;
  set.reserve(j.size());
  for (const Json& index : j) {
    set.push_back(static_cast<int>(integer_at(index, context)));
  }
  return set;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    parse_fail("matrix: expected a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j.front().is_array() || j.front().empty()) {
    parse_fail("matrix: rows must be nonempty arrays");
  }
  const std::size_t cols = j.front().size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      parse_fail("matrix: row " + std::to_string(r + 1) +
                 " has a different length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2) {
        parse_fail("matrix: entries must be [re, im] pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(number_at(entry[0], "matrix entry"),
                  number_at(entry[1], "matrix entry"));
    }
  }
  return m;
}

Json channel_to_json(const CQChannel& channel) {
  Json signals = Json::array();
  for (const DensityOperator& s : channel.signals()) {
    signals.push_back(matrix_to_json(s.matrix()));
  }
  return Json{{"alphabet_size", channel.alphabet_size()},
              {"dim", channel.dim()},
              {"signals", std::move(signals)}};
}

CQChannel channel_from_json(const Json& j) {
  require_keys(j, {"alphabet_size", "dim", "signals"}, {}, "channel");
  const std::int64_t alphabet = positive_at(j["alphabet_size"], "channel.alphabet_size");
  const std::int64_t dim = positive_at(j["dim"], "channel.dim");
  const Json& signals = j["signals"];
  if (!signals.is_array()) parse_fail("channel.signals: expected an array");
  if (static_cast<std::int64_t>(signals.size()) != alphabet) {
    parse_fail("channel.signals: expected " + std::to_string(alphabet) +
               " matrices, found " + std::to_string(signals.size()));
  }
  std::vector<DensityOperator> states;
  states.reserve(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const std::string context = "channel.signals[" + std::to_string(i + 1) + "]";
    states.push_back(
        DensityOperator::validated(square_matrix_at(signals[i], dim, context)));
  }
  return CQChannel::validated(std::move(states));
}

Json pom_to_json(const POM& pom) {
  Json effects = Json::array();
  for (const CMatrix& e : pom.effects()) {
    effects.push_back(matrix_to_json(e));
  }
  return Json{{"dim", pom.dim()},
              {"effects", std::move(effects)},
              {"labels", pom.labels()}};
}

POM pom_from_json(const Json& j) {
  require_keys(j, {"dim", "effects"}, {"labels"}, "pom");
  const std::int64_t dim = positive_at(j["dim"], "pom.dim");
  const Json& effects = j["effects"];
  if (!effects.is_array() || effects.empty()) {
    parse_fail("pom.effects: expected a nonempty array");
  }
  std::vector<CMatrix> matrices;
  matrices.reserve(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const std::string context = "pom.effects[" + std::to_string(i + 1) + "]";
    matrices.push_back(square_matrix_at(effects[i], dim, context));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& raw = j["labels"];
    if (!raw.is_array()) parse_fail("pom.labels: expected an array of strings");
    if (raw.size() != effects.size()) {
      parse_fail("pom.labels: expected one label per effect");
    }
    for (const Json& label : raw) {
      if (!label.is_string()) parse_fail("pom.labels: expected strings");
      labels.push_back(label.get<std::string>());
    }
  }
  return POM::validated(std::move(matrices), std::move(labels));
}

Json distribution_to_json(const SparseDistribution& input) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < input.support_size(); ++i) {
    entries.push_back(Json{{"word", input.words()[i]},
                           {"mass", format_rational(input.masses()[i])}});
  }
  return Json{{"word_length", input.word_length()},
              {"entries", std::move(entries)}};
}

SparseDistribution distribution_from_json(const Json& j) {
  require_keys(j, {"word_length", "entries"}, {}, "distribution");
  const std::int64_t length = positive_at(j["word_length"], "distribution.word_length");
  const Json& entries = j["entries"];
  if (!entries.is_array() || entries.empty()) {
    parse_fail("distribution.entries: expected a nonempty array");
  }
  std::vector<std::pair<Word, BigRational>> pairs;
  pairs.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string context = "distribution.entries[" + std::to_string(i + 1) + "]";
    const Json& entry = entries[i];
    require_keys(entry, {"word", "mass"}, {}, context);
    Word word = word_at(entry["word"], context + ".word");
    if (static_cast<std::int64_t>(word.size()) != length) {
      parse_fail(context + ".word: expected length " + std::to_string(length));
    }
    if (!entry["mass"].is_string()) {
      parse_fail(context + ".mass: expected a rational string like \"3/8\"");
    }
    pairs.emplace_back(std::move(word),
                       parse_rational(entry["mass"].get<std::string>()));
  }
  return SparseDistribution::from_pairs(std::move(pairs));
}

Json qcode_to_json(const QCode& code) {
  Json words = Json::array();
  for (const Word& w : code.codewords) words.push_back(w);
  return Json{{"codewords", std::move(words)},
              {"decoder", pom_to_json(code.decoder)},
              {"has_fail_outcome", code.has_fail_outcome}};
}

QCode qcode_from_json(const Json& j) {
  require_keys(j, {"codewords", "decoder", "has_fail_outcome"}, {}, "code");
  const Json& raw = j["codewords"];
  if (!raw.is_array() || raw.empty()) {
    parse_fail("code.codewords: expected a nonempty array");
  }
  QCode code;
  code.codewords.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string context = "code.codewords[" + std::to_string(i + 1) + "]";
    Word word = word_at(raw[i], context);
    if (!code.codewords.empty() && word.size() != code.codewords.front().size()) {
      parse_fail(context + ": codewords must share one length");
    }
    code.codewords.push_back(std::move(word));
  }
  code.decoder = pom_from_json(j["decoder"]);
  if (!j["has_fail_outcome"].is_boolean()) {
    parse_fail("code.has_fail_outcome: expected a boolean");
  }
  code.has_fail_outcome = j["has_fail_outcome"].get<bool>();
  const std::size_t expected =
      code.codewords.size() + (code.has_fail_outcome ? 1 : 0);
  if (code.decoder.outcome_count() != expected) {
    parse_fail("code.decoder: expected " + std::to_string(expected) +
               " outcomes, found " + std::to_string(code.decoder.outcome_count()));
  }
  return code;
}

Json family_to_json(const SetFamily& family) {
  return Json{{"ground_size", family.params.ground_size},
              {"epsilon", family.params.epsilon},
              {"lambda", family.params.lambda},
              {"sets", family.sets}};
}

SetFamily family_from_json(const Json& j) {
  require_keys(j, {"ground_size", "epsilon", "lambda", "sets"}, {}, "family");
  SetFamily family;
  family.params.ground_size =
      static_cast<std::uint64_t>(positive_at(j["ground_size"], "family.ground_size"));
  family.params.epsilon = number_at(j["epsilon"], "family.epsilon");
  family.params.lambda = number_at(j["lambda"], "family.lambda");
  family.params.validate();
  const Json& sets = j["sets"];
  if (!sets.is_array()) parse_fail("family.sets: expected an array");
  family.sets.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    family.sets.push_back(
        index_set_at(sets[i], "family.sets[" + std::to_string(i + 1) + "]"));
  }
  return family;
}

Json idcode_to_json(const SimQIDCode& code) {
  Json inputs = Json::array();
  for (const SparseDistribution& p : code.inputs) {
    inputs.push_back(distribution_to_json(p));
  }
  return Json{{"n", code.n},
              {"base_pom", pom_to_json(code.base)},
              {"subsets", code.subsets},
              {"inputs", std::move(inputs)}};
}

SimQIDCode idcode_from_json(const Json& j) {
  require_keys(j, {"n", "base_pom", "subsets", "inputs"}, {}, "id code");
  SimQIDCode code;
  code.n = static_cast<int>(positive_at(j["n"], "id code.n"));
  code.base = pom_from_json(j["base_pom"]);
  const Json& subsets = j["subsets"];
  if (!subsets.is_array() || subsets.empty()) {
    parse_fail("id code.subsets: expected a nonempty array");
  }
  code.subsets.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    code.subsets.push_back(index_set_at(
        subsets[i], "id code.subsets[" + std::to_string(i + 1) + "]"));
  }
  const Json& inputs = j["inputs"];
  if (!inputs.is_array() || inputs.size() != subsets.size()) {
    parse_fail("id code.inputs: expected one input distribution per subset");
  }
  code.inputs.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    SparseDistribution input = distribution_from_json(inputs[i]);
    if (input.word_length() != code.n) {
      parse_fail("id code.inputs[" + std::to_string(i + 1) +
                 "]: word length does not match n");
    }
    code.inputs.push_back(std::move(input));
  }
  return code;
}

BigRational parse_rational(const std::string& text) {
  try {
    BigRational value(text);
    return value;
  } catch (const std::exception&) {
    parse_fail("rational: cannot parse '" + text + "'");
  }
}

std::string format_rational(const BigRational& value) { return value.str(); }

void require_keys(const Json& object,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& context) {
  if (!object.is_object()) parse_fail(context + ": expected an object");
  for (const auto& item : object.items()) {
    const std::string& key = item.key();
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) parse_fail(context + ": unknown key '" + key + "'");
  }
  for (const std::string& key : required) {
    if (!object.contains(key)) {
      parse_fail(context + ": missing key '" + key + "'");
    }
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail_validation(errkind::BadParameter, "cannot open for writing: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    fail_validation(errkind::BadParameter, "write failed: " + path);
  }
}

std::uint64_t fnv64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(path + ": cannot open");
  std::uint64_t hash = kFnvBasis;
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    hash = fnv64(buffer, static_cast<std::size_t>(in.gcount()), hash);
  }
  return hash;
}

void write_density_csv(const std::string& path,
                       const std::vector<DensitySample>& samples,
                       const POM& pom) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    fail_validation(errkind::BadParameter, "cannot open for writing: " + path);
  }
  out << "word,outcome,density,joint_mass\n";
  out << std::setprecision(17);
  for (const DensitySample& s : samples) {
    for (std::size_t i = 0; i < s.word.size(); ++i) {
      out << (i ? "." : "") << s.word[i];
    }
    out << ',' << pom.labels()[static_cast<std::size_t>(s.outcome) - 1] << ','
        << s.density << ',' << s.joint_mass << '\n';
  }
  if (!out) {
    fail_validation(errkind::BadParameter, "write failed: " + path);
  }
}

std::string settings_fingerprint() {
  const Settings& s = settings();
  // threads is excluded on purpose: payloads must not depend on it.
  Json j{{"validation_tol", s.validation_tol},
         {"algebra_tol", s.algebra_tol},
         {"rational_tol", s.rational_tol},
         {"dim_limit", s.dim_limit},
         {"alphabet_cap", s.alphabet_cap},
         {"support_cap", s.support_cap},
         {"exhaustive_tuple_cap", s.exhaustive_tuple_cap},
         {"family_candidate_cap", s.family_candidate_cap},
         {"brute_force_candidate_cap", s.brute_force_candidate_cap},
         {"brute_force_node_cap", s.brute_force_node_cap},
         {"random_coding_retries", s.random_coding_retries},
         {"size_bound_max_bits", s.size_bound_max_bits}};
  return to_hex(fnv64(j.dump()));
}

}  // namespace qidlab
