#include "cli.hpp"

#include "gmoran/ingest.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using gmoran::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gmoran");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("generate then score the double star") {
  const std::string path = tmp("gmoran_cli_ds.json");
  REQUIRE(cli({"generate", "double-star", "--leaves", "1000", "--out", path}).code == 0);
  const Run r = cli({"score", "--graph", path, "--kind", "L", "--column", "v_a(a=3)"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["kind"] == "L");
  CHECK(std::abs(j["global_i"].get<double>() - 1.0) <= 0.01);
  CHECK(j["p_value"].is_null());
}

TEST_CASE("range for M stays in [-1, 1]") {
  for (const std::vector<std::string>& gen : {std::vector<std::string>{"hex", "--side", "6"},
                                              std::vector<std::string>{"random", "--n", "40", "--p", "0.1"},
                                              std::vector<std::string>{"double-star", "--leaves", "7"}}) {
    const std::string path = tmp("gmoran_cli_range.json");
    auto args = std::vector<std::string>{"generate"};
    args.insert(args.end(), gen.begin(), gen.end());
    args.insert(args.end(), {"--out", path});
    REQUIRE(cli(args).code == 0);
    const Run r = cli({"range", "--graph", path, "--kind", "M"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["i_min"].get<double>() >= -1.0 - 1e-12);
    CHECK(j["i_max"].get<double>() <= 1.0 + 1e-12);
  }
}

TEST_CASE("compare on a regular graph") {
  const std::string path = tmp("gmoran_cli_torus.json");
  REQUIRE(cli({"generate", "torus", "--rows", "5", "--cols", "6", "--out", path}).code == 0);
  const Run r = cli({"compare", "--graph", path, "--column", "iid", "--format", "json", "--seed", "3"});
  REQUIRE(r.code == 0);
  const json rows = json::parse(r.out);
  REQUIRE(rows.size() == 5);
  std::map<std::string, double> by_kind;
  for (const auto& row : rows) by_kind[row["kind"]] = row["i"].get<double>();
  CHECK(by_kind["A"] == doctest::Approx(by_kind["P"]).epsilon(1e-11));
  CHECK(by_kind["A"] == doctest::Approx(by_kind["M"]).epsilon(1e-11));
  CHECK(by_kind["L"] == doctest::Approx((1.0 - by_kind["A"]) / 2.0).epsilon(1e-11));

  const Run csv = cli({"compare", "--graph", path, "--graph", path, "--column", "iid", "--column", "alternating",
                       "--kind", "A", "--kind", "M"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("graph,column,kind,i\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 9);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::string path = tmp("gmoran_cli_rand.json");
  REQUIRE(cli({"generate", "random", "--n", "30", "--p", "0.1", "--seed", "4", "--out", path}).code == 0);
  const std::vector<std::string> args{"test", "--graph", path, "--column", "iid", "--perms", "200", "--seed", "9"};
  const Run a = cli(args);
  const Run b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("seed: 9") != std::string::npos);
  CHECK(json::parse(a.out)["seed"] == 9);
  const Run four = cli({"test", "--graph", path, "--column", "iid", "--perms", "200", "--seed", "9", "--workers", "4"});
  CHECK(four.out == a.out);
}

TEST_CASE("every subcommand runs on the sample data") {
  const std::string g = std::string(GMORAN_DATA_DIR) + "/sample_graph.json";
  const std::string a = std::string(GMORAN_DATA_DIR) + "/sample_attributes.csv";
  const std::vector<std::string> attrs{"--attrs", a, "--total-column", "total", "--impute", "--column", "hisp_share"};
  auto with = [&](std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  CHECK(cli(with({"score", "--graph", g, "--kind", "M"}, attrs)).code == 0);
  CHECK(cli(with({"score", "--graph", g, "--perms", "99"}, attrs)).code == 0);
  CHECK(cli(with({"local", "--graph", g}, attrs)).code == 0);
  CHECK(cli(with({"local", "--graph", g, "--format", "csv"}, attrs)).code == 0);
  const Run sc = cli(with({"scatter", "--graph", g}, attrs));
  CHECK(sc.code == 0);
  CHECK(sc.out.find("slope_is_moran=true") != std::string::npos);
  const Run w = cli(with({"walk", "--graph", g, "--steps", "4"}, attrs));
  CHECK(w.code == 0);
  CHECK(json::parse(w.out)["steps"].size() == 5);
  CHECK(cli(with({"test", "--graph", g, "--perms", "99"}, attrs)).code == 0);
  const Run sp = cli({"spectrum", "--graph", g, "--kind", "L", "--column", "alternating"});
  CHECK(sp.code == 0);
  CHECK(json::parse(sp.out)["order"] == "ascending");
  const Run ex = cli({"extremize", "--graph", g, "--kind", "P"});
  CHECK(ex.code == 0);
  CHECK(ex.out.find("id,v_min,v_max") != std::string::npos);
  CHECK(cli({"range", "--graph", g, "--kind", "P", "--format", "csv"}).code == 0);
}

TEST_CASE("exit codes") {
  const std::string g = std::string(GMORAN_DATA_DIR) + "/sample_graph.json";
  const std::string a = std::string(GMORAN_DATA_DIR) + "/sample_attributes.csv";
  CHECK(cli({}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"score", "--bogus"}).code == 2);
  const std::string bad = tmp("gmoran_cli_bad.json");
  {
    std::ofstream f(bad);
    f << "{\"nodes\": [";
  }
  const Run parse = cli({"score", "--graph", bad, "--column", "iid"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("ParseError") != std::string::npos);
  CHECK(cli({"score", "--graph", g, "--attrs", a, "--column", "nope"}).code == 2);
  // zero-population share without imputation, then a constant column
  CHECK(cli({"score", "--graph", g, "--attrs", a, "--total-column", "total", "--column", "hisp_share"}).code == 3);
  CHECK(cli({"walk", "--graph", g, "--kind", "P", "--column", "iid"}).code == 3);
  CHECK(cli({"score", "--graph", g, "--kind", "Q", "--column", "iid"}).code == 3);
}

TEST_CASE("help documents the schemas") {
  const Run h = cli({"--help"});
  CHECK(h.out.find("node-link") != std::string::npos);
  CHECK(h.out.find("global_i") != std::string::npos);
}
