#include "cli.hpp"

#include "gmoran/graph.hpp"
#include "gmoran/ingest.hpp"
#include "gmoran/moran.hpp"
#include "gmoran/patterns.hpp"
#include "gmoran/randwalk.hpp"
#include "gmoran/spectral.hpp"
#include "gmoran/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace gmoran {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchemaHelp = R"(Graph files (--graph): JSON node-link,
  {"nodes": [{"id": "a"}, ...], "links": [{"source": "a", "target": "b"}, ...]}
  "links" may hold ["a", "b"] pairs; or give "adjacency": one id list per node.
Attribute files (--attrs): CSV with a header row and an id column (--id-column).
  With --total-column T every other column c also provides c_share = c / T.
Columns (--column) without --attrs, or not found in it: alternating, v_a(a=X),
  v_inf, fiedler, fiedler_sign, iid.
Reports: JSON objects with stable key order, numbers at 12 significant digits.
  score/test: kind, n, global_i, expected_null, p_value, permutations, seed,
              local_is_extension, node_ids, local_i, lagged
  range: kind, method, i_min, i_max, lambda_min, lambda_max, scale,
         multiplicity_min/max, degenerate, residual_min/max,
         eigenvalue_bounds, degree_bounds
  walk: sigma0, sigma1, rho, i_q, i_qqt, steps
  CSV variants start with a '#' line of key=value pairs where applicable.
Exit codes: 0 success, 2 usage or malformed input, 3 numeric or validation error.)";

struct Config {
  std::string graph_path;
  std::vector<std::string> graph_paths;
  std::string attrs_path;
  std::string id_column = "id";
  std::string total_column;
  bool impute = false;
  std::string column;
  std::vector<std::string> columns;
  std::string kind = "A";
  std::vector<std::string> kinds;
  std::uint64_t seed = 0;
  std::size_t perms = 999;
  std::size_t score_perms = 0;
  unsigned workers = 1;
  std::string format;
  std::string out_path;
  Index steps = 0;
  SolverOptions solver;

  // generate
  std::string family;
  Index leaves = 10, n = 10, rows = 10, cols = 10, side = 5;
  double p = 0.1;
  double delete_fraction = 0.0;
};

WeightKind kind_of(const std::string& s) {
  const auto k = parse_weight_kind(s);
  if (!k || *k == WeightKind::Custom) throw Error(ErrorCode::InvalidParam, "unknown weight kind '" + s + "'");
  return *k;
}

Format format_of(const Config& c, Format fallback) {
  if (c.format.empty()) return fallback;
  const auto f = parse_format(c.format);
  if (!f) throw Error(ErrorCode::InvalidParam, "unknown format '" + c.format + "' (json or csv)");
  return *f;
}

Graph load_graph(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidParam, "--graph is required");
  return load_graph_json(path);
}

Eigen::VectorXd column_values(const Config& c, const Graph& g, const std::string& name) {
  if (name.empty()) throw Error(ErrorCode::InvalidParam, "--column is required");
  if (!c.attrs_path.empty()) {
    std::optional<std::string> total;
    if (!c.total_column.empty()) total = c.total_column;
    AttributeTable t = load_attributes_csv(c.attrs_path, c.id_column, {}, total).aligned_to(g);
    if (c.impute) t = impute_zero_population(t, g);
    if (t.has_column(name)) {
      Eigen::VectorXd v = t.column(name);
      if (!v.allFinite()) {
        throw Error(ErrorCode::InvalidParam, "column '" + name + "' has undefined shares (zero totals); pass --impute");
      }
      return v;
    }
  }
  if (auto v = builtin_column(g, name, c.seed, c.solver)) return *v;
  throw Error(ErrorCode::MissingColumn, "no column '" + name + "' in the attribute file or among built-in columns");
}

WeightMatrix weights(const Config& c, const Graph& g, WeightKind k) {
  return build_weights(g, k, {c.solver.dense_threshold});
}

void emit(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + c.out_path + "'");
  f << text;
}

json num(double x) { return std::isfinite(x) ? json(round_sig12(x)) : json(nullptr); }

json num_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

std::string cmd_score(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const NodeVector v(column_values(c, g, c.column));
  const WeightMatrix w = weights(c, g, kind_of(c.kind));
  std::optional<PermutationOptions> test;
  if (c.score_perms > 0) test = PermutationOptions{c.score_perms, c.seed, c.workers};
  return emit_report(make_moran_report(v, w, g.node_ids(), test), format_of(c, Format::Json));
}

std::string cmd_test(const Config& c, std::ostream& err) {
  const Graph g = load_graph(c.graph_path);
  const NodeVector v(column_values(c, g, c.column));
  const WeightMatrix w = weights(c, g, kind_of(c.kind));
  if (c.perms < 1) throw Error(ErrorCode::InvalidParam, "--perms must be at least 1");
  err << "seed: " << c.seed << "\n";
  const PermutationResult r = permutation_test(v, w, {c.perms, c.seed, c.workers});
  if (format_of(c, Format::Json) == Format::Csv) {
    return "kind,observed,expected_null,null_mean,null_sd,p_value,permutations,seed\n" + c.kind + "," +
           format_number(r.observed) + "," + format_number(r.expected_null) + "," + format_number(r.null_mean) + "," +
           format_number(r.null_sd) + "," + format_number(r.p_value) + "," + std::to_string(r.permutations) + "," +
           std::to_string(r.seed) + "\n";
  }
  json j;
  j["kind"] = std::string(to_string(w.kind()));
  j["observed"] = num(r.observed);
  j["expected_null"] = num(r.expected_null);
  j["null_mean"] = num(r.null_mean);
  j["null_sd"] = num(r.null_sd);
  j["p_value"] = num(r.p_value);
  j["permutations"] = r.permutations;
  j["seed"] = r.seed;
  return j.dump(1) + "\n";
}

std::string cmd_range(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  return emit_report(achievable_range(g, kind_of(c.kind), c.solver), format_of(c, Format::Json));
}

std::string cmd_extremize(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const SpectralRange r = achievable_range(g, kind_of(c.kind), c.solver);
  if (format_of(c, Format::Csv) == Format::Json) {
    json j;
    j["kind"] = std::string(to_string(r.kind));
    j["i_min"] = num(r.i_min);
    j["i_max"] = num(r.i_max);
    j["degenerate"] = r.degenerate();
    j["node_ids"] = g.node_ids();
    j["v_min"] = num_array(r.v_min);
    j["v_max"] = num_array(r.v_max);
    return j.dump(1) + "\n";
  }
  std::string s = "# kind=" + std::string(to_string(r.kind)) + " i_min=" + format_number(r.i_min) +
                  " i_max=" + format_number(r.i_max) + " degenerate=" + (r.degenerate() ? "true" : "false") +
                  "\nid,v_min,v_max\n";
  for (Index i = 0; i < g.size(); ++i) s += g.id(i) + "," + format_number(r.v_min(i)) + "," + format_number(r.v_max(i)) + "\n";
  return s;
}

std::string cmd_local(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const NodeVector v(column_values(c, g, c.column));
  const WeightMatrix w = weights(c, g, kind_of(c.kind));
  const MoranReport r = make_moran_report(v, w, g.node_ids());
  const Eigen::VectorXd d = d_i_diagnostic(v, g);
  if (format_of(c, Format::Json) == Format::Csv) {
    std::string s = "# kind=" + std::string(to_string(r.kind)) + " global_i=" + format_number(r.global_i) +
                    " local_is_extension=" + (r.local_is_extension ? "true" : "false") + "\nnode_id,local_i,d_i\n";
    for (Index i = 0; i < g.size(); ++i) s += g.id(i) + "," + format_number(r.local_i(i)) + "," + format_number(d(i)) + "\n";
    return s;
  }
  json j;
  j["kind"] = std::string(to_string(r.kind));
  j["global_i"] = num(r.global_i);
  j["local_is_extension"] = r.local_is_extension;
  j["node_ids"] = g.node_ids();
  j["local_i"] = num_array(r.local_i);
  j["d_i"] = num_array(d);
  return j.dump(1) + "\n";
}

std::string cmd_scatter(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const NodeVector v(column_values(c, g, c.column));
  const ScatterData s = moran_scatter(v, weights(c, g, kind_of(c.kind)));
  if (format_of(c, Format::Csv) == Format::Csv) return emit_scatter_csv(s);
  json j;
  j["slope"] = num(s.slope);
  j["intercept"] = num(s.intercept);
  j["slope_is_moran"] = s.slope_is_moran;
  j["v"] = num_array(s.v);
  j["u"] = num_array(s.u);
  return j.dump(1) + "\n";
}

std::string cmd_walk(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const NodeVector v(column_values(c, g, c.column));
  const WeightMatrix q = weights(c, g, kind_of(c.kind));
  return emit_report(walk_diagnostics(v, q, c.steps), format_of(c, Format::Json));
}

std::string cmd_spectrum(const Config& c) {
  const Graph g = load_graph(c.graph_path);
  const WeightMatrix w = weights(c, g, kind_of(c.kind));
  const Spectrum s = symmetric_spectrum(w, c.solver);
  std::optional<FiedlerPair> f;
  if (is_connected(g) && g.size() >= 2) f = fiedler_pair(g, c.solver);
  std::optional<double> energy;
  if (!c.column.empty()) energy = dirichlet_energy(column_values(c, g, c.column), g);
  if (format_of(c, Format::Json) == Format::Csv) {
    std::string out = "# kind=" + std::string(to_string(s.kind)) + " complete=" + (s.complete ? "true" : "false");
    if (f) out += " fiedler_value=" + format_number(f->value);
    if (energy) out += " dirichlet_energy=" + format_number(*energy);
    out += "\nindex,eigenvalue,residual\n";
    for (Index i = 0; i < s.eigenvalues.size(); ++i)
      out += std::to_string(i) + "," + format_number(s.eigenvalues(i)) + "," + format_number(s.residuals(i)) + "\n";
    return out;
  }
  json j;
  j["kind"] = std::string(to_string(s.kind));
  j["n"] = g.size();
  j["complete"] = s.complete;
  j["order"] = s.ascending ? "ascending" : "descending";
  j["eigenvalues"] = num_array(s.eigenvalues);
  j["max_residual"] = num(s.residuals.size() ? s.residuals.maxCoeff() : 0.0);
  j["fiedler_value"] = f ? num(f->value) : json(nullptr);
  j["node_ids"] = g.node_ids();
  j["fiedler"] = f ? num_array(f->vector.values()) : json(nullptr);
  j["dirichlet_energy"] = energy ? num(*energy) : json(nullptr);
  return j.dump(1) + "\n";
}

std::string cmd_compare(const Config& c) {
  std::vector<std::string> graphs = c.graph_paths;
  if (!c.graph_path.empty()) graphs.insert(graphs.begin(), c.graph_path);
  if (graphs.empty()) throw Error(ErrorCode::InvalidParam, "--graph is required");
  std::vector<std::string> columns = c.columns;
  if (!c.column.empty()) columns.insert(columns.begin(), c.column);
  if (columns.empty()) throw Error(ErrorCode::InvalidParam, "--column is required");
  std::vector<std::string> kinds = c.kinds.empty() ? std::vector<std::string>{"A", "P", "L", "M", "M2"} : c.kinds;

  const Format f = format_of(c, Format::Csv);
  std::string csv = "graph,column,kind,i\n";
  json rows = json::array();
  for (const auto& path : graphs) {
    const Graph g = load_graph(path);
    std::vector<WeightMatrix> ws;
    for (const auto& k : kinds) ws.push_back(weights(c, g, kind_of(k)));
    for (const auto& col : columns) {
      const NodeVector v(column_values(c, g, col));
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        const double i = moran_i(v, ws[k]);
        const std::string kname(to_string(ws[k].kind()));
        csv += path + "," + col + "," + kname + "," + format_number(i) + "\n";
        rows.push_back({{"graph", path}, {"column", col}, {"kind", kname}, {"i", num(i)}});
      }
    }
  }
  return f == Format::Csv ? csv : rows.dump(1) + "\n";
}

std::string cmd_generate(const Config& c) {
  Graph g = [&] {
    const std::string& f = c.family;
    if (f == "cycle") return gen_cycle(c.n);
    if (f == "path") return gen_path(c.n);
    if (f == "complete") return gen_complete(c.n);
    if (f == "grid") return gen_grid(c.rows, c.cols);
    if (f == "torus") return gen_torus(c.rows, c.cols);
    if (f == "hex") return gen_hex_hexagon(c.side);
    if (f == "double-star") return gen_double_star(c.leaves);
    if (f == "random") return gen_random_connected(c.n, c.p, c.seed);
    throw Error(ErrorCode::InvalidParam, "unknown family '" + f + "'");
  }();
  if (c.delete_fraction > 0.0) g = random_edge_deletion(g, c.delete_fraction, c.seed);
  return graph_to_json(g);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Moran's I on graphs under several weight matrices", "gmoran"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--out", c.out_path, "write the report here instead of stdout");
    sub->add_option("--seed", c.seed, "random seed (default 0)");
    sub->add_option("--dense-threshold", c.solver.dense_threshold, "largest size solved densely")
        ->capture_default_str();
    sub->add_option("--tol", c.solver.tol, "iterative solver relative residual")->capture_default_str();
    sub->add_option("--max-iter", c.solver.max_iterations, "iterative solver restarts")->capture_default_str();
  };
  auto add_graph = [&](CLI::App* sub) { sub->add_option("--graph", c.graph_path, "node-link JSON graph file"); };
  auto add_column = [&](CLI::App* sub) {
    sub->add_option("--attrs", c.attrs_path, "attribute CSV");
    sub->add_option("--id-column", c.id_column, "id column of the attribute CSV")->capture_default_str();
    sub->add_option("--total-column", c.total_column, "population total; enables <column>_share");
    sub->add_flag("--impute", c.impute, "fill zero-total rows from neighbor means");
    sub->add_option("--column", c.column, "attribute or built-in column");
  };

  std::string which;
  auto make = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->callback([&which, name] { which = name; });
    add_common(s);
    return s;
  };

  CLI::App* score = make("score", "Moran's I of a column with local shares");
  add_graph(score);
  add_column(score);
  score->add_option("--perms", c.score_perms, "permutations for a p-value (default none)");
  score->add_option("--workers", c.workers, "threads for the permutation test");

  CLI::App* test = make("test", "permutation test");
  add_graph(test);
  add_column(test);
  test->add_option("--perms", c.perms, "number of permutations")->capture_default_str();
  test->add_option("--workers", c.workers, "threads")->capture_default_str();

  CLI::App* range = make("range", "achievable range of I with enclosing bounds");
  add_graph(range);
  CLI::App* extremize = make("extremize", "vectors attaining the range ends, as CSV");
  add_graph(extremize);
  CLI::App* local = make("local", "local shares I_i and the A-versus-M difference D_i");
  add_graph(local);
  add_column(local);
  CLI::App* scatter = make("scatter", "scatter pairs (v, W v) with the fitted slope");
  add_graph(scatter);
  add_column(scatter);
  CLI::App* walk = make("walk", "one-step random walk statistics");
  add_graph(walk);
  add_column(walk);
  walk->add_option("--steps", c.steps, "length of the variance profile");
  CLI::App* spectrum = make("spectrum", "eigenvalues, Fiedler vector, Dirichlet energy");
  add_graph(spectrum);
  spectrum->add_option("--column", c.column, "column whose Dirichlet energy is reported");
  spectrum->add_option("--attrs", c.attrs_path, "attribute CSV");
  spectrum->add_option("--id-column", c.id_column, "id column of the attribute CSV");
  CLI::App* compare = make("compare", "I across kinds for many graphs and columns, long form");
  compare->add_option("--graph", c.graph_paths, "graph files (repeatable)");
  compare->add_option("--attrs", c.attrs_path, "attribute CSV");
  compare->add_option("--id-column", c.id_column, "id column of the attribute CSV");
  compare->add_option("--total-column", c.total_column, "population total; enables <column>_share");
  compare->add_flag("--impute", c.impute, "fill zero-total rows from neighbor means");
  compare->add_option("--column", c.columns, "columns (repeatable)");
  compare->add_option("--kind", c.kinds, "kinds (default A P L M M2)");
  CLI::App* generate = make("generate", "write a synthetic graph as node-link JSON");
  generate->add_option("family", c.family, "cycle, path, complete, grid, torus, hex, double-star, random")
      ->required();
  generate->add_option("--n", c.n, "nodes (cycle, path, complete, random)");
  generate->add_option("--rows", c.rows, "grid rows");
  generate->add_option("--cols", c.cols, "grid columns");
  generate->add_option("--side", c.side, "hexagon side length");
  generate->add_option("--leaves", c.leaves, "leaves per hub (double-star)");
  generate->add_option("--p", c.p, "extra edge probability (random)");
  generate->add_option("--delete-fraction", c.delete_fraction, "delete this fraction of edges, staying connected");

  // Each subcommand defaults its own kind.
  score->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  test->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  range->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  extremize->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  local->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  scatter->add_option("--kind", c.kind, "A, P, L, M or M2 (default P)");
  walk->add_option("--kind", c.kind, "M, M2 or another bistochastic kind (default M)");
  spectrum->add_option("--kind", c.kind, "A, P, L, M or M2 (default A)");
  scatter->preparse_callback([&](std::size_t) { c.kind = "P"; });
  walk->preparse_callback([&](std::size_t) { c.kind = "M"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (which == "score") text = cmd_score(c);
    else if (which == "test") text = cmd_test(c, err);
    else if (which == "range") text = cmd_range(c);
    else if (which == "extremize") text = cmd_extremize(c);
    else if (which == "local") text = cmd_local(c);
    else if (which == "scatter") text = cmd_scatter(c);
    else if (which == "walk") text = cmd_walk(c);
    else if (which == "spectrum") text = cmd_spectrum(c);
    else if (which == "compare") text = cmd_compare(c);
    else if (which == "generate") text = cmd_generate(c);
    emit(c, out, text);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gmoran
