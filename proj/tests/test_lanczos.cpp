#include "gmoran/lanczos.hpp"

#include "gmoran/graph.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

using namespace gmoran;

TEST_CASE("diagonal operator") {
  const Eigen::Index n = 500;
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = static_cast<double>(i) / n;
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = d.cwiseProduct(x); };
  const auto top = lanczos_largest(op, n, {4});
  REQUIRE(top.converged);
  for (int k = 0; k < 4; ++k) CHECK(top.values(k) == doctest::Approx(static_cast<double>(n - 1 - k) / n).epsilon(1e-10));
  const auto bottom = lanczos_smallest(op, n, {3});
  REQUIRE(bottom.converged);
  CHECK(std::abs(bottom.values(0)) < 1e-10);
  CHECK(bottom.values(2) == doctest::Approx(2.0 / n).epsilon(1e-10));
}

TEST_CASE("grid adjacency against the dense solver") {
  const Graph g = gen_grid(30, 33);
  const Eigen::SparseMatrix<double> a = g.adjacency_sparse();
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency_dense(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ref = es.eigenvalues();
  const Eigen::Index n = g.size();

  const auto top = lanczos_largest(op, n, {6});
  REQUIRE(top.converged);
  for (int k = 0; k < 6; ++k) CHECK(top.values(k) == doctest::Approx(ref(n - 1 - k)).epsilon(1e-9));
  CHECK(top.residuals.maxCoeff() <= 1e-8 * 4.0);
  CHECK((top.vectors.transpose() * top.vectors - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);

  const auto bottom = lanczos_smallest(op, n, {6});
  REQUIRE(bottom.converged);
  for (int k = 0; k < 6; ++k) CHECK(bottom.values(k) == doctest::Approx(ref(k)).epsilon(1e-9));
}

TEST_CASE("seeded start vector makes results reproducible") {
  const Graph g = gen_hex_hexagon(10);
  const Eigen::SparseMatrix<double> a = g.adjacency_sparse();
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  const auto r1 = lanczos_largest(op, g.size(), {2, 0, 1e-10, 10000, 5});
  const auto r2 = lanczos_largest(op, g.size(), {2, 0, 1e-10, 10000, 5});
  CHECK(r1.values == r2.values);
  CHECK(r1.vectors == r2.vectors);
}

TEST_CASE("small problems fall back to a dense solve") {
  Eigen::MatrixXd m(3, 3);
  m << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = m * x; };
  const auto r = lanczos_largest(op, 3, {1});
  CHECK(r.values(0) == doctest::Approx(2 + std::sqrt(2.0)));
}

TEST_CASE("restart cap reports non-convergence") {
  const Graph g = gen_grid(60, 60);
  const Eigen::SparseMatrix<double> a = g.adjacency_sparse();
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  const auto r = lanczos_largest(op, g.size(), {6, 20, 1e-14, 1, 0});
  CHECK_FALSE(r.converged);
  CHECK(r.residuals.size() == 6);
}
