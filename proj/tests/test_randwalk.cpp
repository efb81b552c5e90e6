#include "gmoran/randwalk.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gmoran;
using gmoran::testing::random_vector;
using gmoran::testing::thrown_code;

TEST_CASE("one step on C4 flips the alternating vector") {
  const auto m = build_weights(gen_cycle(4), WeightKind::Metropolis);
  const Eigen::Vector4d v(1, -1, 1, -1);
  CHECK(walk_step(v, m).isApprox(-v));
  CHECK(walk_step(Eigen::Vector4d::Constant(3.0), m).isApprox(Eigen::Vector4d::Constant(3.0)));
  const auto d = walk_diagnostics(NodeVector(v), m);
  CHECK(d.sigma1 / d.sigma0 == doctest::Approx(1.0));
  CHECK(d.rho == doctest::Approx(-1.0));
  CHECK(d.i_q == doctest::Approx(-1.0));
  CHECK(d.i_qqt == doctest::Approx(1.0));
}

TEST_CASE("leaves of a double star move little") {
  const Graph g = gen_double_star(20);
  const auto m = build_weights(g, WeightKind::Metropolis);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.size());
  v(2) = 1.0;  // one leaf of hub0
  const Eigen::VectorXd w = walk_step(v, m);
  CHECK(w(2) == doctest::Approx(20.0 / 21.0));
  CHECK(w(0) == doctest::Approx(1.0 / 21.0));
}

TEST_CASE("walk_step needs a row-stochastic matrix; diagnostics need bistochastic") {
  const Graph g = gen_double_star(3);
  const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(g.size(), 0, 1);
  CHECK(thrown_code([&] { walk_step(v, build_weights(g, WeightKind::Adjacency)); }) == ErrorCode::NotStochastic);
  CHECK_NOTHROW(walk_step(v, build_weights(g, WeightKind::RowStochastic)));
  CHECK(thrown_code([&] { walk_diagnostics(NodeVector(v), build_weights(g, WeightKind::RowStochastic)); }) ==
        ErrorCode::NotBistochastic);
  CHECK(thrown_code([&] {
          walk_diagnostics(NodeVector(Eigen::VectorXd::Constant(g.size(), 1.0)), build_weights(g, WeightKind::Metropolis));
        }) == ErrorCode::ConstantVector);
  CHECK(thrown_code([&] { variance_profile(v, build_weights(g, WeightKind::Laplacian), 3); }) ==
        ErrorCode::NotBistochastic);
}

TEST_CASE("variance identities for M and M^2 on random graphs") {
  CounterRng rng(21);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Graph g = gen_random_connected(10 + static_cast<Index>(s), 0.15, s);
    const NodeVector v(random_vector(g.size(), rng));
    for (auto k : {WeightKind::Metropolis, WeightKind::MetropolisSquared}) {
      const auto q = build_weights(g, k);
      const auto d = walk_diagnostics(v, q);
      const double ratio = d.sigma1 / d.sigma0;
      CHECK(std::abs(d.i_qqt - ratio * ratio) <= 1e-10);
      CHECK(std::abs(d.i_q - d.rho * ratio) <= 1e-10);
      CHECK(std::abs(d.i_q - moran_i(v, q)) <= 1e-12);
      CHECK(d.i_qqt >= -1e-12);
      CHECK(std::abs(walk_step(v.values(), q).mean() - v.mean()) <= 1e-12);
    }
  }
}

TEST_CASE("P is a valid walk on regular graphs") {
  CounterRng rng(2);
  const Graph g = gen_torus(4, 6);
  const NodeVector v(random_vector(g.size(), rng));
  const auto d = walk_diagnostics(v, build_weights(g, WeightKind::RowStochastic));
  CHECK(std::abs(d.i_qqt - std::pow(d.sigma1 / d.sigma0, 2)) <= 1e-10);
}

TEST_CASE("variance profiles") {
  const Graph c = gen_cycle(8);
  const auto m = build_weights(c, WeightKind::Metropolis);
  Eigen::VectorXd alt(8);
  for (Index i = 0; i < 8; ++i) alt(i) = i % 2 ? -1.0 : 1.0;
  for (double s : variance_profile(alt, m, 10)) CHECK(s == doctest::Approx(1.0));
  for (double s : variance_profile(Eigen::VectorXd::Constant(8, 2.0), m, 5)) CHECK(s == 0.0);

  CounterRng rng(3);
  const Graph g = gen_hex_hexagon(4);
  const Eigen::VectorXd v = random_vector(g.size(), rng);
  const auto m2 = build_weights(g, WeightKind::MetropolisSquared);
  const auto prof = variance_profile(v, m2, 50);
  CHECK(prof.size() == 51);
  for (std::size_t k = 1; k < prof.size(); ++k) CHECK(prof[k] <= prof[k - 1] + 1e-15);
  const auto far = variance_profile(v, build_weights(g, WeightKind::Metropolis), 200);
  CHECK(far.back() < 1e-3 * far.front());

  const auto d = walk_diagnostics(NodeVector(v), m2, 5);
  CHECK(d.steps.size() == 6);
}

TEST_CASE("clustered vector on a lattice: ratio and correlation near 1") {
  const Graph g = gen_grid(13, 13);
  const auto m = build_weights(g, WeightKind::Metropolis);
  const auto r = generalized_extremes(m);
  const auto d = walk_diagnostics(NodeVector(r.v_max), m);
  CHECK(d.sigma1 / d.sigma0 > 0.95);
  CHECK(d.rho > 0.99);
  CHECK(d.i_q == doctest::Approx(r.i_max).epsilon(1e-10));
}

TEST_CASE("iid values on a large lattice: small I and strong variance reduction") {
  CounterRng rng(4);
  const Graph g = gen_grid(40, 40);
  const auto m = build_weights(g, WeightKind::Metropolis);
  const auto d = walk_diagnostics(NodeVector(random_vector(g.size(), rng)), m);
  CHECK(std::abs(d.i_q) < 0.05);
  CHECK(d.sigma1 / d.sigma0 < 0.8);
}

TEST_CASE("spectral gap equals one minus the largest I under M") {
  const Graph g = gen_random_connected(30, 0.1, 5);
  const auto gap = spectral_gap(g);
  const auto r = achievable_range(g, WeightKind::Metropolis);
  CHECK(gap.lambda_2 == doctest::Approx(r.i_max).epsilon(1e-12));
  CHECK(gap.gap == doctest::Approx(1.0 - r.i_max).epsilon(1e-12));
  const auto s = symmetric_spectrum(build_weights(g, WeightKind::Metropolis));
  CHECK(gap.lambda_2 == doctest::Approx(s.eigenvalues(1)).epsilon(1e-10));
}
