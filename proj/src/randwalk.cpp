#include "gmoran/randwalk.hpp"

#include <cmath>

namespace gmoran {

namespace {

void require_bistochastic(const WeightMatrix& q) {
  if (q.size() < 1 || !validate_bistochastic(q, q.tolerance())) {
    throw Error(ErrorCode::NotBistochastic, "walk matrix must be nonnegative with unit row and column sums");
  }
}

}  // namespace

Eigen::VectorXd walk_step(const Eigen::VectorXd& v, const WeightMatrix& q) {
  if (!q.traits().row_stochastic) throw Error(ErrorCode::NotStochastic, "walk matrix is not row-stochastic");
  return q.apply_transpose(v);
}

WalkDiagnostics walk_diagnostics(const NodeVector& v, const WeightMatrix& q, Index profile_steps) {
  require_bistochastic(q);
  if (v.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match walk matrix");
  if (v.is_constant()) throw Error(ErrorCode::ConstantVector, "vector is constant");
  const Eigen::VectorXd& x = v.centered();
  const Eigen::VectorXd y = q.apply_transpose(x);  // centered, since Q preserves the mean
  const double n = static_cast<double>(v.size());
  WalkDiagnostics d;
  d.sigma0 = std::sqrt(x.squaredNorm() / n);
  d.sigma1 = population_sd(y);
  const Eigen::VectorXd yc = y.array() - y.mean();
  const double cov = x.dot(yc) / n;
  d.rho = d.sigma1 > 0.0 ? cov / (d.sigma0 * d.sigma1) : 0.0;
  d.i_q = moran_i(v, q);
  d.i_qqt = moran_i(v, q.gram());
  if (profile_steps > 0) d.steps = variance_profile(v.values(), q, profile_steps);
  return d;
}

std::vector<double> variance_profile(const Eigen::VectorXd& v, const WeightMatrix& q, Index steps) {
  require_bistochastic(q);
  if (steps < 1) throw Error(ErrorCode::InvalidParam, "steps must be at least 1");
  if (v.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match walk matrix");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Eigen::VectorXd x = v;
  out.push_back(population_sd(x));
  for (Index k = 0; k < steps; ++k) {
    x = q.apply_transpose(x);
    out.push_back(population_sd(x));
  }
  return out;
}

SpectralGap spectral_gap(const Graph& g, const SolverOptions& options) {
  const WeightMatrix m = build_weights(g, WeightKind::Metropolis, {options.dense_threshold});
  const SpectralRange r = generalized_extremes(m, options);
  return {r.lambda_max, 1.0 - r.lambda_max};
}

}  // namespace gmoran
