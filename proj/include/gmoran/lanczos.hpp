#pragma once

#include "gmoran/error.hpp"
#include "gmoran/random.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace gmoran {

struct LanczosOptions {
  Eigen::Index nev = 6;            // wanted eigenpairs
  Eigen::Index ncv = 0;            // basis size; 0 picks max(2 nev + 20, 40)
  double tol = 1e-10;              // residual relative to the largest |Ritz value|
  Eigen::Index max_restarts = 10000;
  std::uint64_t seed = 0;          // start vector stream
};

struct LanczosResult {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns
  Eigen::VectorXd residuals;  // ||A x - theta x||, recomputed with the operator
  double norm_estimate = 0.0;
  Eigen::Index restarts = 0;
  Eigen::Index matvecs = 0;
  bool converged = false;
};

/// Largest algebraic eigenpairs of a symmetric operator by thick-restart
/// Lanczos with full reorthogonalization.
///
/// `op(x, y)` must write A x into y (both length n). Small problems
/// (n <= basis size) are solved densely from the explicit matrix.
template <typename Operator>
LanczosResult lanczos_largest(Operator&& op, Eigen::Index n, const LanczosOptions& options = {}) {
  using Eigen::Index;
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  if (n < 1) throw Error(ErrorCode::InvalidParam, "operator dimension must be positive");
  const Index nev = std::clamp<Index>(options.nev, 1, n);
  Index ncv = options.ncv > 0 ? options.ncv : std::max<Index>(2 * nev + 20, 40);
  ncv = std::max(ncv, nev + 2);

  LanczosResult result;
  if (ncv >= n) {
    MatrixXd a(n, n);
    VectorXd e = VectorXd::Zero(n), col(n);
    for (Index j = 0; j < n; ++j) {
      e(j) = 1.0;
      op(e, col);
      a.col(j) = col;
      e(j) = 0.0;
    }
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    result.values = es.eigenvalues().reverse().head(nev);
    result.vectors = es.eigenvectors().rowwise().reverse().leftCols(nev);
    result.norm_estimate = es.eigenvalues().cwiseAbs().maxCoeff();
    result.matvecs = n;
    result.residuals.resize(nev);
    for (Index i = 0; i < nev; ++i) {
      op(result.vectors.col(i).eval(), col);
      result.residuals(i) = (col - result.values(i) * result.vectors.col(i)).norm();
    }
    result.converged = true;
    return result;
  }

  MatrixXd basis(n, ncv + 1);
  MatrixXd h = MatrixXd::Zero(ncv + 1, ncv);
  CounterRng rng(options.seed, 0x1a2c705);
  auto random_unit_orthogonal = [&](Index cols) {
    VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.uniform() - 0.5;
    for (int pass = 0; pass < 2 && cols > 0; ++pass) {
      v -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
    }
    return VectorXd(v / v.norm());
  };
  basis.col(0) = random_unit_orthogonal(0);

  const Index keep = std::min(ncv - 1, nev + (ncv - nev) / 3);
  Index start = 0;
  double anorm = 0.0;
  VectorXd w(n);
  VectorXd theta;
  MatrixXd ritz;
  double beta_last = 0.0;

  for (Index restart = 0;; ++restart) {
    for (Index j = start; j < ncv; ++j) {
      op(basis.col(j).eval(), w);
      ++result.matvecs;
      VectorXd coeff = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * coeff;
      const VectorXd again = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * again;
      coeff += again;
      h.col(j).head(j + 1) = coeff;
      anorm = std::max(anorm, std::abs(coeff(j)));
      double beta = w.norm();
      if (beta <= 1e-14 * std::max(anorm, 1e-300)) {
        // Invariant subspace: continue with a fresh direction, no coupling.
        basis.col(j + 1) = random_unit_orthogonal(j + 1);
        beta = 0.0;
      } else {
        basis.col(j + 1) = w / beta;
      }
      h(j + 1, j) = beta;
    }

    MatrixXd t = h.topRows(ncv);
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(t);
    theta = es.eigenvalues().reverse();
    ritz = es.eigenvectors().rowwise().reverse();
    anorm = std::max(anorm, theta.cwiseAbs().maxCoeff());
    beta_last = h(ncv, ncv - 1);

    bool done = true;
    for (Index i = 0; i < nev; ++i) {
      if (std::abs(beta_last * ritz(ncv - 1, i)) > options.tol * anorm) done = false;
    }
    result.restarts = restart;
    if (done || restart >= options.max_restarts) {
      result.converged = done;
      break;
    }

    MatrixXd kept = basis.leftCols(ncv) * ritz.leftCols(keep);
    basis.col(keep) = basis.col(ncv);
    basis.leftCols(keep) = kept;
    h.setZero();
    for (Index i = 0; i < keep; ++i) {
      h(i, i) = theta(i);
      h(keep, i) = beta_last * ritz(ncv - 1, i);
    }
    start = keep;
  }

  result.values = theta.head(nev);
  result.vectors = basis.leftCols(ncv) * ritz.leftCols(nev);
  result.norm_estimate = anorm;
  result.residuals.resize(nev);
  VectorXd ax(n);
  for (Index i = 0; i < nev; ++i) {
    result.vectors.col(i).normalize();
    op(result.vectors.col(i).eval(), ax);
    ++result.matvecs;
    result.residuals(i) = (ax - result.values(i) * result.vectors.col(i)).norm();
  }
  return result;
}

/// Smallest algebraic eigenpairs, returned ascending.
template <typename Operator>
LanczosResult lanczos_smallest(Operator&& op, Eigen::Index n, const LanczosOptions& options = {}) {
  auto negated = [&op](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    op(x, y);
    y = -y;
  };
  LanczosResult r = lanczos_largest(negated, n, options);
  r.values = -r.values;
  return r;
}

}  // namespace gmoran
