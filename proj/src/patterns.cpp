#include "gmoran/patterns.hpp"

#include "gmoran/random.hpp"

#include <charconv>
#include <regex>

namespace gmoran {

namespace {

Eigen::VectorXd double_star_column(const Graph& g, double leaf) {
  Eigen::VectorXd v(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const std::string& id = g.id(i);
    if (id == "hub0") {
      v(i) = 1.0;
    } else if (id == "hub1") {
      v(i) = -1.0;
    } else if (id.rfind("hub0_", 0) == 0) {
      v(i) = leaf;
    } else if (id.rfind("hub1_", 0) == 0) {
      v(i) = -leaf;
    } else {
      throw Error(ErrorCode::InvalidParam, "node '" + id + "' is not a double-star node (hub0, hub1, hub{h}_leaf{k})");
    }
  }
  return v;
}

}  // namespace

std::vector<std::string> builtin_column_names() {
  return {"alternating", "v_a(a=X)", "v_inf", "fiedler", "fiedler_sign", "iid"};
}

std::optional<Eigen::VectorXd> builtin_column(const Graph& g, std::string_view name, std::uint64_t seed,
                                              const SolverOptions& options) {
  if (name == "alternating") {
    Eigen::VectorXd v(g.size());
    const auto coloring = two_coloring(g);
    for (Index i = 0; i < g.size(); ++i) {
      const int c = coloring ? (*coloring)[static_cast<std::size_t>(i)] : static_cast<int>(i % 2);
      v(i) = c == 0 ? 1.0 : -1.0;
    }
    return v;
  }
  if (name == "v_inf") return double_star_column(g, 0.0);
  static const std::regex va(R"(v_a\((?:a=)?([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\))");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(name.begin(), name.end(), m, va)) {
    const double a = std::stod(m[1].str());
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidParam, "v_a needs a > 0");
    return double_star_column(g, 1.0 / a);
  }
  if (name == "fiedler") return fiedler_vector(g, options).values();
  if (name == "fiedler_sign") {
    const Eigen::VectorXd f = fiedler_vector(g, options).values();
    return f.unaryExpr([](double x) { return x < 0.0 ? -1.0 : 1.0; }).eval();
  }
  if (name == "iid") {
    CounterRng rng(seed, 0x11d);
    Eigen::VectorXd v(g.size());
    for (Index i = 0; i < g.size(); ++i) v(i) = rng.uniform();
    return v;
  }
  return std::nullopt;
}

}  // namespace gmoran
