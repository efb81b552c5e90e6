#include "gmoran/ingest.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gmoran;
using gmoran::testing::random_vector;
using gmoran::testing::thrown_code;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("two nodes, one link") {
  const Graph g = parse_graph_json(R"({"nodes": [{"id": "a"}, {"id": "b"}], "links": [{"source": "a", "target": "b"}]})");
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("duplicate and reversed links collapse") {
  const Graph a = parse_graph_json(R"({"nodes": [{"id": 1}, {"id": 2}, {"id": 3}],
      "links": [[1, 2], [2, 1], {"source": 2, "target": 3}, [1, 2]]})");
  const Graph b = parse_graph_json(R"({"nodes": [{"id": "1"}, {"id": "2"}, {"id": "3"}], "links": [[1, 2], [2, 3]]})");
  CHECK(a == b);
  CHECK(a.node_ids() == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("adjacency layout") {
  const Graph g = parse_graph_json(R"({"nodes": [{"id": "x"}, {"id": "y"}, {"id": "z"}],
      "adjacency": [[{"id": "y"}], [{"id": "x"}, {"id": "z"}], ["y"]]})");
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 2));
}

TEST_CASE("graph parse errors") {
  const std::string bad = "{\n  \"nodes\": [\n    {\"id\": \"a\"},,\n  ]\n}";
  CHECK(thrown_code([&] { parse_graph_json(bad); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_graph_json(bad); }).find("line 3") != std::string::npos);
  CHECK(message_of([] { parse_graph_json(R"({"nodes": [{"name": "a"}], "links": []})"); }).find("nodes[0].id") !=
        std::string::npos);
  CHECK(message_of([] { parse_graph_json(R"({"nodes": [{"id": "a"}, {"id": "b"}], "links": [{"source": "a"}]})"); })
            .find("links[0].target") != std::string::npos);
  CHECK(message_of([] { parse_graph_json(R"({"nodes": [{"id": "a"}]})"); }).find("links") != std::string::npos);
  CHECK(thrown_code([] { parse_graph_json(R"([1, 2])"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { parse_graph_json(R"({"nodes": [{"id": "a"}], "links": [["a", "q"]]})"); }) ==
        ErrorCode::UnknownNodeId);
  CHECK(thrown_code([] { parse_graph_json(R"({"nodes": [{"id": "a"}], "links": [["a", "a"]]})"); }) ==
        ErrorCode::SelfLoop);
  CHECK(thrown_code([] { parse_graph_json(R"({"nodes": [{"id": "a"}, {"id": "a"}], "links": []})"); }) ==
        ErrorCode::DuplicateId);
  CHECK(thrown_code([] { load_graph_json("/nonexistent/graph.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("graph round trip and order stability") {
  const Graph g = gen_hex_hexagon(4);
  const std::string text = graph_to_json(g);
  CHECK(parse_graph_json(text) == g);
  const auto path = std::filesystem::temp_directory_path() / "gmoran_roundtrip.json";
  write_graph_json(g, path);
  CHECK(load_graph_json(path) == load_graph_json(path));
  CHECK(load_graph_json(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("shipped sample graph loads") {
  const Graph g = load_graph_json(std::string(GMORAN_DATA_DIR) + "/sample_graph.json");
  CHECK(g.size() == 8);
  CHECK(g.edge_count() == 11);
  CHECK(is_connected(g));
}

TEST_CASE("attribute CSV with derived shares") {
  const auto t = parse_attributes_csv("id,total,hisp\na,100,10\nb,200,50\nc,0,0\n", "id", {}, std::string("total"));
  CHECK(t.rows() == 3);
  CHECK(t.has_column("hisp_share"));
  CHECK_FALSE(t.has_column("total_share"));
  const Eigen::VectorXd s = t.column("hisp_share");
  CHECK(s(0) == doctest::Approx(0.1));
  CHECK(s(1) == doctest::Approx(0.25));
  CHECK(std::isnan(s(2)));
  CHECK(t.zero_total_rows() == std::vector<Index>{2});
  CHECK(t.column("hisp")(1) == 50.0);
}

TEST_CASE("RFC 4180 quoting") {
  const auto t = parse_attributes_csv("\"id\",\"note, with comma\",v\r\n\"a \"\"x\"\"\",\"multi\nline\",1.5\r\nb,,2e3\r\n",
                                      "id", {"v"});
  CHECK(t.ids() == std::vector<std::string>{"a \"x\"", "b"});
  CHECK(t.column("v")(1) == 2000.0);
  CHECK(thrown_code([] { parse_attributes_csv("id,v\n\"a,1\n", "id"); }) == ErrorCode::ParseError);
}

TEST_CASE("attribute errors") {
  CHECK(thrown_code([] { parse_attributes_csv("id,v\na,1\n", "geoid"); }) == ErrorCode::MissingColumn);
  CHECK(thrown_code([] { parse_attributes_csv("id,v\na,1\n", "id", {"w"}); }) == ErrorCode::MissingColumn);
  const std::string msg = message_of([] { parse_attributes_csv("id,v\na,1\nb,abc\n", "id"); });
  CHECK(msg.find("NonNumericCell") != std::string::npos);
  CHECK(msg.find("row 2") != std::string::npos);
  CHECK(msg.find("'v'") != std::string::npos);
  CHECK(thrown_code([] { parse_attributes_csv("id,v\na,1\na,2\n", "id"); }) == ErrorCode::DuplicateId);
  CHECK(thrown_code([] { parse_attributes_csv("id,v\na,1\n", "id").column("nope"); }) == ErrorCode::MissingColumn);
}

TEST_CASE("alignment to graph order") {
  const Graph g = build_graph({"c", "a", "b"}, {{"a", "b"}, {"b", "c"}}, false);
  const auto t = parse_attributes_csv("id,v\na,1\nb,2\nc,3\nextra,9\n", "id").aligned_to(g);
  CHECK(t.ids() == g.node_ids());
  CHECK(t.column("v") == Eigen::Vector3d(3, 1, 2));
  const auto missing = parse_attributes_csv("id,v\na,1\n", "id");
  CHECK(thrown_code([&] { missing.aligned_to(g); }) == ErrorCode::MissingNode);
  const std::string msg = message_of([&] { missing.aligned_to(g); });
  CHECK(msg.find("c") != std::string::npos);
  CHECK(msg.find("b") != std::string::npos);
}

TEST_CASE("zero-population imputation") {
  const Graph g = build_graph({"z", "p", "q"}, {{"z", "p"}, {"z", "q"}}, false);
  const auto t = parse_attributes_csv("id,total,group\nz,0,0\np,100,10\nq,200,30\n", "id", {}, std::string("total"));
  const auto r = impute_zero_population(t, g);
  CHECK(r.column("total")(0) == doctest::Approx(150.0));
  CHECK(r.column("group")(0) == doctest::Approx(20.0));
  CHECK(r.column("group_share")(0) == doctest::Approx(2.0 / 15.0));
  CHECK(impute_zero_population(r, g) == r);

  // chained zeros resolve over several passes
  const Graph path = gen_path(4);
  const auto chain = parse_attributes_csv("id,total,g\n0,0,0\n1,0,0\n2,0,0\n3,40,4\n", "id", {}, std::string("total"));
  const auto filled = impute_zero_population(chain, path);
  CHECK(filled.zero_total_rows().empty());
  CHECK(filled.column("g_share")(0) == doctest::Approx(0.1));

  // no zero rows: unchanged
  const auto full = parse_attributes_csv("id,total,g\n0,5,1\n1,5,2\n2,5,3\n3,5,4\n", "id", {}, std::string("total"));
  CHECK(impute_zero_population(full, path) == full);

  const Graph split({"a", "b", "c"}, {{0, 1}});
  const auto iso = parse_attributes_csv("id,total,g\na,10,1\nb,10,2\nc,0,0\n", "id", {}, std::string("total"));
  CHECK(thrown_code([&] { impute_zero_population(iso, split); }) == ErrorCode::Unimputable);
}

TEST_CASE("twelve significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-20) == "-2.5e-20");
  CHECK(round_sig12(2.0 / 3.0) == 0.666666666667);
}

TEST_CASE("Moran report JSON schema and round trip") {
  CounterRng rng(1);
  const Graph g = gen_random_connected(12, 0.2, 1);
  const NodeVector v(random_vector(12, rng));
  const auto r = make_moran_report(v, build_weights(g, WeightKind::Metropolis), g.node_ids(), PermutationOptions{99, 3, 1});
  const std::string text = emit_report(r, Format::Json);
  for (const char* key : {"\"kind\"", "\"global_i\"", "\"expected_null\"", "\"local_i\"", "\"p_value\""})
    CHECK(text.find(key) != std::string::npos);
  CHECK(text.find("\"kind\"") < text.find("\"global_i\""));
  const MoranReport back = parse_moran_report_json(text);
  CHECK(back.kind == r.kind);
  CHECK(back.node_ids == r.node_ids);
  CHECK(back.global_i == round_sig12(r.global_i));
  CHECK(back.seed == r.seed);
  CHECK(std::abs(back.global_i - r.global_i) <= 1e-11 * std::abs(r.global_i));
  CHECK(emit_report(back, Format::Json) == text);
  CHECK(emit_report(r, Format::Csv).rfind("# kind=M global_i=", 0) == 0);
}

TEST_CASE("range and walk report round trips") {
  const Graph g = gen_hex_hexagon(3);
  const auto r = achievable_range(g, WeightKind::Adjacency);
  const std::string text = emit_report(r, Format::Json);
  const auto back = parse_range_json(text);
  CHECK(emit_report(back, Format::Json) == text);
  CHECK(back.degree_bounds->hi == round_sig12(r.degree_bounds->hi));
  CHECK(emit_report(r, Format::Csv).rfind("kind,method,i_min,i_max", 0) == 0);

  CounterRng rng(2);
  const auto w = walk_diagnostics(NodeVector(random_vector(g.size(), rng)), build_weights(g, WeightKind::Metropolis), 3);
  const std::string wt = emit_report(w, Format::Json);
  CHECK(emit_report(parse_walk_json(wt), Format::Json) == wt);
}

TEST_CASE("scatter CSV") {
  const Graph g = gen_cycle(5);
  const auto s = moran_scatter(NodeVector{1, 2, 3, 4, 5}, build_weights(g, WeightKind::RowStochastic));
  const std::string csv = emit_scatter_csv(s);
  CHECK(csv.rfind("# slope=", 0) == 0);
  CHECK(csv.find("\nv,u\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
