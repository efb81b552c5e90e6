#include "gmoran/spectral.hpp"

#include "gmoran/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gmoran {

std::string_view to_string(RangeMethod m) noexcept {
  switch (m) {
    case RangeMethod::GeneralizedSymmetric: return "generalized-symmetric";
    case RangeMethod::LagrangeSymmetrized: return "lagrange-symmetrized";
    case RangeMethod::RegularShortcut: return "regular-shortcut";
  }
  return "generalized-symmetric";
}

Projection::Projection(Index n) : n_(n) {
  if (n < 2) throw Error(ErrorCode::InvalidParam, "the mean-zero subspace needs at least 2 nodes");
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  h_ = Eigen::VectorXd::Constant(n, -s);
  h_(0) += 1.0;
  tau_ = 2.0 / h_.squaredNorm();
}

Eigen::VectorXd Projection::reflect(Eigen::VectorXd x) const {
  x -= (tau_ * h_.dot(x)) * h_;
  return x;
}

Eigen::VectorXd Projection::lift(const Eigen::VectorXd& y) const {
  if (y.size() != n_ - 1) throw Error(ErrorCode::DimensionMismatch, "reduced vector must have length n - 1");
  Eigen::VectorXd x(n_);
  x(0) = 0.0;
  x.tail(n_ - 1) = y;
  return reflect(std::move(x));
}

Eigen::VectorXd Projection::restrict_to(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector must have length n");
  return reflect(x).tail(n_ - 1);
}

Eigen::VectorXd Projection::project(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector must have length n");
  return x.array() - x.mean();
}

Eigen::MatrixXd Projection::basis() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n_, n_) - tau_ * h_ * h_.transpose();
  return h.rightCols(n_ - 1);
}

Eigen::MatrixXd Projection::reduce(const Eigen::MatrixXd& w) const {
  if (w.rows() != n_ || w.cols() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be n x n");
  const Eigen::VectorXd p = w * h_;
  const double c = h_.dot(p);
  const auto m = n_ - 1;
  const auto ht = h_.tail(m);
  const auto pt = p.tail(m);
  Eigen::MatrixXd b = w.bottomRightCorner(m, m);
  b.noalias() -= tau_ * ht * pt.transpose();
  b.noalias() -= tau_ * pt * ht.transpose();
  b.noalias() += (tau_ * tau_ * c) * ht * ht.transpose();
  return 0.5 * (b + b.transpose());
}

namespace {

void require_symmetric(const WeightMatrix& w) {
  if (!w.traits().symmetric) throw Error(ErrorCode::NotSymmetric, "weight matrix is not symmetric");
}

LanczosOptions lanczos_options(const SolverOptions& o, Index nev) {
  LanczosOptions l;
  l.nev = nev;
  l.ncv = o.ncv;
  l.tol = o.tol;
  l.max_restarts = o.max_iterations;
  l.seed = o.seed;
  return l;
}

void require_converged(const LanczosResult& r, std::string_view what) {
  if (r.converged) return;
  std::ostringstream os;
  os << what << " did not converge after " << r.restarts << " restarts; best residual "
     << r.residuals.maxCoeff() << " (norm estimate " << r.norm_estimate << ")";
  throw Error(ErrorCode::ConvergenceFailure, os.str());
}

Index count_near(const Eigen::VectorXd& values, double target, double tol) {
  return static_cast<Index>(((values.array() - target).abs() <= tol).count());
}

double multiplicity_tol(const Eigen::VectorXd& values) {
  return 1e-9 * std::max(1.0, values.cwiseAbs().maxCoeff());
}

Eigen::VectorXd unit_centered(const Eigen::VectorXd& v) {
  Eigen::VectorXd x = v.array() - v.mean();
  return x / x.norm();
}

// Extremes of the reduced operator, dense or Lanczos. Fills everything but
// kind, method and the bounds.
SpectralRange reduced_extremes(const WeightMatrix& w, const SolverOptions& options, bool allow_shortcut) {
  const Index n = w.size();
  const Projection proj(n);
  SpectralRange r;
  r.scale = static_cast<double>(n) / w.total_weight();

  if (w.is_dense() && allow_shortcut && w.traits().constant_row_sum) {
    r.method = RangeMethod::RegularShortcut;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.dense());
    if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
    const Eigen::MatrixXd& phi = es.eigenvectors();
    const Eigen::VectorXd align = (phi.transpose() * Eigen::VectorXd::Ones(n)).cwiseAbs();
    Index drop = 0;
    align.maxCoeff(&drop);
    std::vector<Index> keep;
    for (Index i = 0; i < n; ++i)
      if (i != drop) keep.push_back(i);
    Eigen::VectorXd vals(n - 1);
    for (Index i = 0; i < n - 1; ++i) vals(i) = es.eigenvalues()(keep[static_cast<std::size_t>(i)]);
    const Index lo = keep.front(), hi = keep.back();
    r.lambda_min = es.eigenvalues()(lo);
    r.lambda_max = es.eigenvalues()(hi);
    r.v_min = unit_centered(phi.col(lo));
    r.v_max = unit_centered(phi.col(hi));
    const double tol = multiplicity_tol(vals);
    r.multiplicity_min = count_near(vals, r.lambda_min, tol);
    r.multiplicity_max = count_near(vals, r.lambda_max, tol);
    r.residual_min = (w.dense() * r.v_min - r.lambda_min * r.v_min).norm();
    r.residual_max = (w.dense() * r.v_max - r.lambda_max * r.v_max).norm();
  } else if (w.is_dense()) {
    r.method = RangeMethod::GeneralizedSymmetric;
    const Eigen::MatrixXd b = proj.reduce(w.dense());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
    const Eigen::VectorXd& vals = es.eigenvalues();
    const Index m = n - 1;
    r.lambda_min = vals(0);
    r.lambda_max = vals(m - 1);
    r.v_min = unit_centered(proj.lift(es.eigenvectors().col(0)));
    r.v_max = unit_centered(proj.lift(es.eigenvectors().col(m - 1)));
    const double tol = multiplicity_tol(vals);
    r.multiplicity_min = count_near(vals, r.lambda_min, tol);
    r.multiplicity_max = count_near(vals, r.lambda_max, tol);
    r.residual_min = (b * es.eigenvectors().col(0) - r.lambda_min * es.eigenvectors().col(0)).norm();
    r.residual_max = (b * es.eigenvectors().col(m - 1) - r.lambda_max * es.eigenvectors().col(m - 1)).norm();
  } else {
    r.method = RangeMethod::GeneralizedSymmetric;
    const auto& s = w.sparse();
    auto op = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
      const Eigen::VectorXd x = proj.lift(y);
      const Eigen::VectorXd wx = s * x;
      out = proj.restrict_to(wx);
    };
    const Index m = n - 1;
    const auto lopt = lanczos_options(options, std::min<Index>(2, m));
    const LanczosResult top = lanczos_largest(op, m, lopt);
    require_converged(top, "largest generalized eigenpair");
    const LanczosResult bottom = lanczos_smallest(op, m, lopt);
    require_converged(bottom, "smallest generalized eigenpair");
    r.lambda_max = top.values(0);
    r.lambda_min = bottom.values(0);
    r.v_max = unit_centered(proj.lift(top.vectors.col(0)));
    r.v_min = unit_centered(proj.lift(bottom.vectors.col(0)));
    const double tol = std::max(multiplicity_tol(top.values), 10.0 * options.tol * top.norm_estimate);
    r.multiplicity_max = count_near(top.values, r.lambda_max, tol);
    r.multiplicity_min = count_near(bottom.values, r.lambda_min, tol);
    r.residual_max = top.residuals(0);
    r.residual_min = bottom.residuals(0);
  }
  r.i_min = r.scale * r.lambda_min;
  r.i_max = r.scale * r.lambda_max;
  return r;
}

}  // namespace

Spectrum symmetric_spectrum(const WeightMatrix& w, const SolverOptions& options) {
  require_symmetric(w);
  Spectrum s;
  s.kind = w.kind();
  s.ascending = w.kind() == WeightKind::Laplacian;
  const Index n = w.size();
  if (w.is_dense()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.dense());
    if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
    s.complete = true;
    if (s.ascending) {
      s.eigenvalues = es.eigenvalues();
      s.eigenvectors = es.eigenvectors();
    } else {
      s.eigenvalues = es.eigenvalues().reverse();
      s.eigenvectors = es.eigenvectors().rowwise().reverse();
    }
    s.residuals = (w.dense() * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal()).colwise().norm();
    return s;
  }

  const auto& m = w.sparse();
  auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = m * x; };
  const Index k = std::min<Index>(options.nev, n / 2);
  const auto lopt = lanczos_options(options, k);
  const LanczosResult top = lanczos_largest(op, n, lopt);
  require_converged(top, "largest eigenpairs");
  const LanczosResult bottom = lanczos_smallest(op, n, lopt);
  require_converged(bottom, "smallest eigenpairs");
  s.complete = false;
  s.eigenvalues.resize(2 * k);
  s.eigenvectors.resize(n, 2 * k);
  s.residuals.resize(2 * k);
  for (Index i = 0; i < k; ++i) {
    // descending: top block as is, then bottom block reversed; ascending mirrors it
    const Index up = s.ascending ? 2 * k - 1 - i : i;
    const Index down = s.ascending ? i : 2 * k - 1 - i;
    s.eigenvalues(up) = top.values(i);
    s.eigenvectors.col(up) = top.vectors.col(i);
    s.residuals(up) = top.residuals(i);
    s.eigenvalues(down) = bottom.values(i);
    s.eigenvectors.col(down) = bottom.vectors.col(i);
    s.residuals(down) = bottom.residuals(i);
  }
  return s;
}

SpectralRange generalized_extremes(const WeightMatrix& w, const SolverOptions& options) {
  require_symmetric(w);
  SpectralRange r = reduced_extremes(w, options, true);
  r.kind = w.kind();
  return r;
}

SpectralRange lagrange_extremes_p(const Graph& g, const SolverOptions& options) {
  const WeightMatrix p = build_weights(g, WeightKind::RowStochastic, {options.dense_threshold});
  SpectralRange r = reduced_extremes(p.symmetric_part(), options, false);
  r.kind = WeightKind::RowStochastic;
  r.method = RangeMethod::LagrangeSymmetrized;
  // The symmetric part has the same total weight n as P, so n / w = 1.
  return r;
}

RangeBounds adjacency_range_bounds(const Graph& g, WeightKind kind, const SolverOptions& options) {
  if (kind != WeightKind::Adjacency && kind != WeightKind::RowStochastic) {
    throw Error(ErrorCode::InvalidParam, "enclosing bounds are defined for kinds A and P only");
  }
  const DegreeStats st = g.degree_stats();
  if (g.edge_count() == 0) throw Error(ErrorCode::InvalidParam, "graph has no edges");
  if (kind == WeightKind::RowStochastic && st.d_min == 0) {
    throw Error(ErrorCode::IsolatedNode, "graph has a node of degree 0");
  }
  double lambda_1 = 0.0, lambda_n = 0.0;
  const Index n = g.size();
  if (n <= options.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency_dense(), Eigen::EigenvaluesOnly);
    lambda_n = es.eigenvalues()(0);
    lambda_1 = es.eigenvalues()(n - 1);
  } else {
    const Eigen::SparseMatrix<double> a = g.adjacency_sparse();
    auto op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
    const auto lopt = lanczos_options(options, 1);
    const LanczosResult top = lanczos_largest(op, n, lopt);
    require_converged(top, "largest adjacency eigenvalue");
    const LanczosResult bottom = lanczos_smallest(op, n, lopt);
    require_converged(bottom, "smallest adjacency eigenvalue");
    lambda_1 = top.values(0);
    lambda_n = bottom.values(0);
  }
  const double denom = kind == WeightKind::Adjacency ? st.d_avg : static_cast<double>(st.d_min);
  const double dmax = static_cast<double>(st.d_max);
  RangeBounds b;
  b.degree = {-dmax / denom, dmax / denom};
  b.eigenvalue = {lambda_n / denom, lambda_1 / denom};
  return b;
}

SpectralRange achievable_range(const Graph& g, WeightKind kind, const SolverOptions& options) {
  SpectralRange r;
  switch (kind) {
    case WeightKind::RowStochastic:
      r = lagrange_extremes_p(g, options);
      break;
    case WeightKind::Adjacency:
    case WeightKind::Laplacian:
    case WeightKind::Metropolis:
    case WeightKind::MetropolisSquared:
      r = generalized_extremes(build_weights(g, kind, {options.dense_threshold}), options);
      break;
    default:
      throw Error(ErrorCode::InvalidParam, "achievable_range needs a built-in weight kind");
  }
  if (kind == WeightKind::Adjacency || kind == WeightKind::RowStochastic) {
    const RangeBounds b = adjacency_range_bounds(g, kind, options);
    r.degree_bounds = b.degree;
    r.eigenvalue_bounds = b.eigenvalue;
  }
  return r;
}

Decomposition decompose_i(const NodeVector& v, const WeightMatrix& w, const SolverOptions& options) {
  require_symmetric(w);
  const Index n = w.size();
  if (n > options.dense_threshold) {
    throw Error(ErrorCode::DenseOnly, "decomposition needs the full eigenbasis; graph exceeds the dense threshold");
  }
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length does not match weight matrix");
  if (v.is_constant()) throw Error(ErrorCode::ConstantVector, "vector is constant");
  const Projection proj(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj.reduce(w.to_dense()));
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  Decomposition d;
  d.scale = static_cast<double>(n) / w.total_weight();
  d.eigenvalues = es.eigenvalues().reverse();
  d.basis = proj.basis() * es.eigenvectors().rowwise().reverse();
  d.coefficients = d.basis.transpose() * v.centered();
  const Eigen::ArrayXd a2 = d.coefficients.array().square();
  d.reconstructed_i = d.scale * (a2 * d.eigenvalues.array()).sum() / a2.sum();
  return d;
}

FiedlerPair fiedler_pair(const Graph& g, const SolverOptions& options) {
  if (g.size() < 2) throw Error(ErrorCode::InvalidParam, "Fiedler vector needs at least 2 nodes");
  const auto labels = component_labels(g);
  const Index components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (components > 1) {
    throw Error(ErrorCode::Disconnected,
                "graph has " + std::to_string(components) + " connected components; mu_2 = 0 is repeated");
  }
  const WeightMatrix l = build_weights(g, WeightKind::Laplacian, {options.dense_threshold});
  const SpectralRange r = generalized_extremes(l, options);
  Eigen::VectorXd x = r.v_min;
  const double cut = 1e-10 * x.cwiseAbs().maxCoeff();
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > cut) {
      if (x(i) < 0) x = -x;
      break;
    }
  }
  return {r.lambda_min, NodeVector(std::move(x))};
}

NodeVector fiedler_vector(const Graph& g, const SolverOptions& options) { return fiedler_pair(g, options).vector; }

}  // namespace gmoran
