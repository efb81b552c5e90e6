#pragma once

#include "gmoran/graph.hpp"
#include "gmoran/moran.hpp"
#include "gmoran/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gmoran {

/// Synthetic node columns available by name without a data file:
///   alternating    +1 / -1 by a proper 2-coloring (index parity if none)
///   v_a(a=X)       double star: hubs +1 / -1, their leaves +1/X / -1/X
///   v_inf          double star: hubs +1 / -1, leaves 0
///   fiedler        Fiedler vector of the graph
///   fiedler_sign   its sign pattern as +1 / -1
///   iid            independent uniform [0, 1) values from `seed`
/// Returns nullopt for names outside this list.
std::optional<Eigen::VectorXd> builtin_column(const Graph& g, std::string_view name, std::uint64_t seed = 0,
                                              const SolverOptions& options = {});

std::vector<std::string> builtin_column_names();

}  // namespace gmoran
