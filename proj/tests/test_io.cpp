#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "qidlab/errors.hpp"
#include "qidlab/io.hpp"
#include "support.hpp"

using namespace qidlab;
using namespace qidlab::testing;

namespace {

// Scratch directory removed when the test block ends.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    char tmpl[] = "/tmp/qidlab_io_XXXXXX";
    path = ::mkdtemp(tmpl);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("matrices round-trip exactly") {
  Prng rng(31);
  CMatrix m = random_complex(3, 2, rng);
  CMatrix back = matrix_from_json(matrix_to_json(m));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  CHECK(back == m);  // bitwise: json stores the exact doubles
}

TEST_CASE("matrix parsing rejects malformed shapes") {
  expect_kind([] { matrix_from_json(Json::array()); }, errkind::ParseError);
  expect_kind([] { matrix_from_json(Json::parse("[[[0,0]],[[0,0],[1,0]]]")); },
              errkind::ParseError);
  expect_kind([] { matrix_from_json(Json::parse("[[[0,0,0]]]")); },
              errkind::ParseError);
  expect_kind([] { matrix_from_json(Json::parse("[[\"x\"]]")); },
              errkind::ParseError);
}

TEST_CASE("channels round-trip with their fingerprint") {
  CQChannel ch = overlap_channel(0.5);
  CQChannel back = channel_from_json(channel_to_json(ch));
  CHECK(back.alphabet_size() == 2);
  CHECK(back.dim() == 2);
  CHECK(back.fingerprint() == ch.fingerprint());

  Json j = channel_to_json(ch);
  j["signals"].erase(1);
  expect_kind([&] { channel_from_json(j); }, errkind::ParseError);

  Json bad = channel_to_json(ch);
  bad["extra"] = 1;
  expect_kind([&] { channel_from_json(bad); }, errkind::ParseError);
}

TEST_CASE("measurements round-trip with labels") {
  POM pom = POM::computational_basis(3);
  POM back = pom_from_json(pom_to_json(pom));
  REQUIRE(back.outcome_count() == 3);
  CHECK(back.labels() == pom.labels());
  for (int y = 1; y <= 3; ++y) CHECK(back.effect(y) == pom.effect(y));

  // labels are optional on input and default to 1..K
  Json j = pom_to_json(pom);
  j.erase("labels");
  CHECK(pom_from_json(j).labels() == std::vector<std::string>{"1", "2", "3"});

  j["labels"] = Json::array({"a"});
  expect_kind([&] { pom_from_json(j); }, errkind::ParseError);
}

TEST_CASE("distributions round-trip exactly through rational strings") {
  SparseDistribution p = SparseDistribution::from_pairs(
      {{{1, 2}, BigRational(1, 3)}, {{2, 1}, BigRational(2, 3)}});
  Json j = distribution_to_json(p);
  CHECK(j["entries"][0]["mass"] == "1/3");
  SparseDistribution back = distribution_from_json(j);
  CHECK(back.words() == p.words());
  CHECK(back.masses() == p.masses());

  Json bad = j;
  bad["entries"][0]["mass"] = "abc";
  expect_kind([&] { distribution_from_json(bad); }, errkind::ParseError);

  bad = j;
  bad["entries"][0]["word"] = Json::array({1});
  expect_kind([&] { distribution_from_json(bad); }, errkind::ParseError);

  bad = j;
  bad["entries"][0].erase("mass");
  expect_kind([&] { distribution_from_json(bad); }, errkind::ParseError);
}

TEST_CASE("codes round-trip and police the decoder outcome count") {
  QCode code;
  code.codewords = {{1}, {2}};
  code.decoder = POM::computational_basis(2);
  code.has_fail_outcome = false;
  QCode back = qcode_from_json(qcode_to_json(code));
  CHECK(back.codewords == code.codewords);
  CHECK(back.has_fail_outcome == false);
  CHECK(back.decoder.outcome_count() == 2);

  Json j = qcode_to_json(code);
  j["has_fail_outcome"] = true;  // now the decoder is one outcome short
  expect_kind([&] { qcode_from_json(j); }, errkind::ParseError);

  j = qcode_to_json(code);
  j["codewords"] = Json::array({Json::array({1}), Json::array({2, 2})});
  expect_kind([&] { qcode_from_json(j); }, errkind::ParseError);
}

TEST_CASE("set families round-trip and revalidate their parameters") {
  SetFamily family;
  family.params = FamilyParams{20, 0.2, 0.75};
  family.sets = {{1, 2, 3, 4}, {5, 6, 7, 8}};
  SetFamily back = family_from_json(family_to_json(family));
  CHECK(back.params.ground_size == 20);
  CHECK(back.params.epsilon == 0.2);
  CHECK(back.params.lambda == 0.75);
  CHECK(back.sets == family.sets);

  Json j = family_to_json(family);
  j["lambda"] = 1.5;
  expect_kind([&] { family_from_json(j); }, errkind::BadParameter);
}

TEST_CASE("identification codes round-trip") {
  SimQIDCode code;
  code.n = 1;
  code.base = POM::computational_basis(2);
  code.subsets = {{1}, {2}};
  code.inputs = {SparseDistribution::point_mass({1}),
                 SparseDistribution::point_mass({2})};
  SimQIDCode back = idcode_from_json(idcode_to_json(code));
  CHECK(back.n == 1);
  CHECK(back.subsets == code.subsets);
  REQUIRE(back.inputs.size() == 2);
  CHECK(back.inputs[0].words() == code.inputs[0].words());
  CHECK(back.inputs[1].masses() == code.inputs[1].masses());

  Json j = idcode_to_json(code);
  j["inputs"].erase(1);
  expect_kind([&] { idcode_from_json(j); }, errkind::ParseError);

  j = idcode_to_json(code);
  j["n"] = 2;  // inputs now have the wrong word length
  expect_kind([&] { idcode_from_json(j); }, errkind::ParseError);
}

TEST_CASE("rational strings parse and normalize") {
  CHECK(parse_rational("3/8") == BigRational(3, 8));
  CHECK(parse_rational("6/8") == BigRational(3, 4));
  CHECK(parse_rational("2") == BigRational(2));
  CHECK(format_rational(BigRational(1, 3)) == "1/3");
  CHECK(format_rational(BigRational(2)) == "2");
  expect_kind([] { parse_rational("abc"); }, errkind::ParseError);
  expect_kind([] { parse_rational("1/0"); }, errkind::ParseError);
}

TEST_CASE("key checking rejects unknown and missing keys") {
  Json ok{{"a", 1}, {"b", 2}};
  require_keys(ok, {"a"}, {"b"}, "test");
  expect_kind([&] { require_keys(ok, {"a"}, {}, "test"); },
              errkind::ParseError);
  expect_kind([&] { require_keys(ok, {"a", "c"}, {"b"}, "test"); },
              errkind::ParseError);
  expect_kind([] { require_keys(Json::array(), {}, {}, "test"); },
              errkind::ParseError);
}

TEST_CASE("json files round-trip and report parse locations") {
  TempDir dir;
  Json j{{"x", 1}, {"y", Json::array({1, 2})}};
  write_json_file(dir.file("a.json"), j);
  CHECK(load_json_file(dir.file("a.json")) == j);

  {
    std::ofstream out(dir.file("bad.json"));
    out << "{ not json";
  }
  try {
    load_json_file(dir.file("bad.json"));
    FAIL_CHECK("expected ParseError");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == errkind::ParseError);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }

  expect_kind([&] { load_json_file(dir.file("missing.json")); },
              errkind::ParseError);
  expect_kind(
      [&] { write_json_file(dir.file("no/such/dir.json"), Json::object()); },
      errkind::BadParameter);
}

TEST_CASE("hash helpers match known vectors") {
  CHECK(to_hex(0) == "0000000000000000");
  CHECK(to_hex(0xdeadbeefULL) == "00000000deadbeef");
  CHECK(fnv64(std::string()) == kFnvBasis);
  CHECK(fnv64(std::string("a")) == 0xaf63dc4c8601ec8cULL);

  TempDir dir;
  {
    std::ofstream out(dir.file("h.txt"), std::ios::binary);
    out << "hello\n";
  }
  CHECK(fnv64_file(dir.file("h.txt")) == fnv64(std::string("hello\n")));
  expect_kind([&] { fnv64_file(dir.file("gone.txt")); }, errkind::ParseError);
}

TEST_CASE("density CSV lists one sample per row") {
  TempDir dir;
  std::vector<DensitySample> samples = {{{1, 2}, 1, 1.0, 0.25},
                                        {{2, 2}, 2, 0.5, 0.125}};
  write_density_csv(dir.file("d.csv"), samples, POM::computational_basis(2));
  CHECK(slurp(dir.file("d.csv")) ==
        "word,outcome,density,joint_mass\n"
        "1.2,1,1,0.25\n"
        "2.2,2,0.5,0.125\n");
}

TEST_CASE("settings fingerprint tracks tolerances but not threads") {
  SettingsGuard guard;
  const std::string base = settings_fingerprint();
  CHECK(settings_fingerprint() == base);

  settings().threads = 7;
  CHECK(settings_fingerprint() == base);

  settings().validation_tol = 1e-6;
  CHECK(settings_fingerprint() != base);
}
