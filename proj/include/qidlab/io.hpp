#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"
#include "qidlab/fnv.hpp"
#include "qidlab/idcode.hpp"
#include "qidlab/resolvability.hpp"
#include "qidlab/setfamily.hpp"
#include "qidlab/txcode.hpp"

namespace qidlab {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// All structured file formats are JSON; see docs/formats.md for the field
// reference.  Structural problems (bad shape, unknown or missing keys,
// unparseable text) raise ParseError; semantic problems (non-PSD matrix,
// bad trace, ...) raise the specific validation kinds.

// Complex matrix: array of rows, each entry a [re, im] pair.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json channel_to_json(const CQChannel& channel);
CQChannel channel_from_json(const Json& j);

Json pom_to_json(const POM& pom);
POM pom_from_json(const Json& j);

// Sparse word distribution; masses are exact rationals like "3/8".
Json distribution_to_json(const SparseDistribution& input);
SparseDistribution distribution_from_json(const Json& j);

Json qcode_to_json(const QCode& code);
QCode qcode_from_json(const Json& j);

Json family_to_json(const SetFamily& family);
SetFamily family_from_json(const Json& j);

Json idcode_to_json(const SimQIDCode& code);
SimQIDCode idcode_from_json(const Json& j);

BigRational parse_rational(const std::string& text);
std::string format_rational(const BigRational& value);

// Rejects keys outside required + optional; requires all of required.
void require_keys(const Json& object,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& context);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::uint64_t fnv64_file(const std::string& path);

// Density samples as CSV (x, y, density, mass); y uses the POM's labels.
void write_density_csv(const std::string& path,
                       const std::vector<DensitySample>& samples,
                       const POM& pom);

// Hash of the effective numeric settings, echoed into reports.
std::string settings_fingerprint();

}  // namespace qidlab
