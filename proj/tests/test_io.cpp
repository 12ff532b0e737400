#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "eqhodge/corpus.hpp"
#include "eqhodge/io.hpp"

using namespace eqhodge;

namespace {

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path shipped() { return std::filesystem::path(EQHODGE_DATA_DIR) / "fixtures"; }

}  // namespace

TEST(Io, ParseErrorReportsLineAndColumn) {
  const auto msg = error_text([] { parse_json_text("{\n  \"facets\": [1,,2]\n}", "bad.json"); });
  EXPECT_EQ(msg.rfind("cli::parse: bad.json:2:", 0), 0u) << msg;
  EXPECT_NE(msg.find("syntax error"), std::string::npos);
}

TEST(Io, MissingFileIsParseError) {
  EXPECT_NE(error_text([] { read_json_file("/nonexistent/x.json"); }).find("cannot open"), std::string::npos);
}

TEST(Io, SchemaErrorsNameTheField) {
  EXPECT_EQ(error_text([] { complex_from_json(Json::parse(R"({"name": "x"})"), "k"); }), "cli::validate: k: missing field \"facets\"");
  EXPECT_EQ(error_text([] { complex_from_json(Json::parse(R"({"facets": [[0, "a"]]})"), "k"); }), "cli::validate: k.facets[0][1]: expected an integer");
  EXPECT_EQ(error_text([] { omega_from_json(Json::parse(R"({"omega": [{"edge": [0, 1, 2], "value": 1}]})")); }),
            "cli::validate: omega.omega[0].edge: an edge has two vertices");
  EXPECT_EQ(error_text([] { vertex_function_from_json(Json::parse(R"({"f": [0, true]})")); }), "cli::validate: f.f[1]: expected a number");
  EXPECT_EQ(error_text([] { group_from_json(Json::parse(R"({"group": {"order": 2, "table": [[0, 1]]}})")); }),
            "cli::validate: group.group.table: expected order rows");
}

TEST(Io, FixtureFunctionLengthIsChecked) {
  const auto j = Json::parse(R"({"facets": [[0, 1], [1, 2], [0, 2]], "f": [0, 1]})");
  EXPECT_EQ(error_text([&] { fixture_from_json(j, "t"); }), "cli::validate: t.f: expected one value per vertex");
}

TEST(Io, MissingFunctionDefaultsToIndex) {
  const auto d = fixture_from_json(Json::parse(R"({"facets": [[0, 1], [1, 2], [0, 2]]})"), "t");
  EXPECT_EQ(d.f, (std::vector<double>{0, 0.5, 1}));  // v/(n-1)
  EXPECT_EQ(d.name, "t");
  EXPECT_FALSE(d.has_omega);
  EXPECT_FALSE(d.group.has_value());
}

TEST(Io, FixtureRoundTrip) {
  for (const auto& name : {"cycle(3)", "rp2", "torus", "klein_bottle", "figure_eight_s3"}) {
    const auto d = builtin_fixture(name);
    const Json j = fixture_to_json(d);
    const auto back = fixture_from_json(parse_json_text(j.dump(2), name), name);
    EXPECT_EQ(back.complex, d.complex) << name;
    EXPECT_EQ(back.f, d.f) << name;
    EXPECT_EQ(back.omega, d.omega) << name;
    EXPECT_EQ(back.loops, d.loops) << name;
    EXPECT_EQ(fixture_to_json(back), j) << name;
  }
}

TEST(Io, ShippedFixturesMatchBuiltins) {
  for (const auto& [file, name] : std::vector<std::pair<std::string, std::string>>{
           {"cycle3", "cycle(3)"}, {"rp2", "rp2"}, {"torus", "torus"}, {"klein_bottle", "klein_bottle"}, {"figure_eight_s3", "figure_eight_s3"}}) {
    const auto path = shipped() / (file + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(fixture_to_json(fixture_from_json(read_json_file(path), path.string())), fixture_to_json(builtin_fixture(name))) << file;
  }
}

TEST(Io, ShippedCorpusMatchesDefault) {
  const auto j = read_json_file(shipped() / "corpus.json");
  EXPECT_EQ(corpus_config_to_json(corpus_config_from_json(j)), corpus_config_to_json(default_corpus_config()));
}

TEST(Io, CorpusConfigValidation) {
  EXPECT_EQ(error_text([] { corpus_config_from_json(Json::parse(R"({"items": [{"fixture": 3, "cover": "omega"}]})")); }),
            "cli::validate: corpus.items[0].fixture: expected a string");
  EXPECT_EQ(error_text([] { corpus_config_from_json(Json::parse(R"({"items": [{"fixture": "torus", "cover": "weird"}]})")); }),
            "cli::validate: corpus.items[0].cover: expected one of trivial, orientation, omega, voltage");
  EXPECT_EQ(error_text([] { corpus_config_from_json(Json::parse(R"({"items": [{"fixture": "torus", "cover": "omega"}]})")); }),
            "cli::validate: corpus.items[0]: missing field \"m\"");
  EXPECT_EQ(error_text([] { corpus_config_from_json(Json::parse(R"({"items": [], "seed": -1})")); }),
            "cli::validate: corpus.seed: expected a nonnegative integer");
}

TEST(Io, EnvironmentOverridesFixtureDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "eqhodge_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "tiny.json") << R"({"name": "tiny", "facets": [[0, 1], [1, 2], [0, 2]], "f": [2, 1, 0]})";
  setenv("EQHODGE_FIXTURES", dir.c_str(), 1);
  const auto d = load_fixture("tiny");
  EXPECT_EQ(d.f, (std::vector<double>{2, 1, 0}));
  EXPECT_EQ(load_fixture("rp2").complex, builtin_fixture("rp2").complex);  // falls back to builtins
  unsetenv("EQHODGE_FIXTURES");
  std::filesystem::remove_all(dir);
}

TEST(Io, MatchingFromJsonSortsVertices) {
  const auto M = matching_from_json(Json::parse(R"({"pairs": [[[1], [1, 0]], [[2], [2, 1]]]})"));
  ASSERT_EQ(M.pairs.size(), 2u);
  EXPECT_EQ(M.pairs[0].second, (Simplex{0, 1}));
  EXPECT_EQ(M.pairs[1].second, (Simplex{1, 2}));
  EXPECT_EQ(error_text([] { matching_from_json(Json::parse(R"({"pairs": [[[1]]]})")); }), "cli::validate: matching.pairs[0]: expected [sigma, tau]");
}

TEST(Io, FormatNumber) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Io, CsvAndJsonTables) {
  Table t{"demo", {"name", "value", "ok"}, {}};
  t.add({"a,b", 0.25, true});
  t.add({"q\"x", std::size_t{3}, false});
  EXPECT_EQ(to_csv(t), "name,value,ok\n\"a,b\",0.25,pass\n\"q\"\"x\",3,FAIL\n");
  const auto j = Json::parse(to_json_text(t));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["name"], "a,b");
  EXPECT_EQ(j[0]["value"], 0.25);
  EXPECT_EQ(j[1]["ok"], "FAIL");
  EXPECT_THROW(t.add({1.0}), Error);
  EXPECT_EQ(render(t, "json"), to_json_text(t));
}

TEST(Io, WriteTableCreatesFile) {
  const auto dir = std::filesystem::temp_directory_path() / "eqhodge_table_test";
  Table t{"demo", {"x"}, {}};
  t.add({1});
  write_table(t, dir, "csv");
  std::ifstream in(dir / "demo.csv");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(all, "x\n1\n");
  std::filesystem::remove_all(dir);
}
