#pragma once

#include "gmoran/moran.hpp"
#include "gmoran/spectral.hpp"
#include "gmoran/weights.hpp"

#include <Eigen/Core>

#include <vector>

namespace gmoran {

/// One-step statistics of a bistochastic walk Q applied to v (w = v^T Q).
/// Standard deviations use divisor n.
struct WalkDiagnostics {
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  double rho = 0.0;    // correlation of v and w
  double i_q = 0.0;    // I(v; Q) = rho sigma1 / sigma0
  double i_qqt = 0.0;  // I(v; Q Q^T) = (sigma1 / sigma0)^2
  std::vector<double> steps;  // sigma_0 .. sigma_k when a profile was requested
};

/// v^T Q as a node vector. Q must be row-stochastic (NotStochastic).
Eigen::VectorXd walk_step(const Eigen::VectorXd& v, const WeightMatrix& q);

/// Throws NotBistochastic or ConstantVector.
WalkDiagnostics walk_diagnostics(const NodeVector& v, const WeightMatrix& q, Index profile_steps = 0);

/// sigma_0, sigma_1, ..., sigma_steps for repeated steps of a bistochastic Q.
std::vector<double> variance_profile(const Eigen::VectorXd& v, const WeightMatrix& q, Index steps);

/// Population standard deviation.
template <typename Derived>
double population_sd(const Eigen::MatrixBase<Derived>& v) {
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(v.size()));
}

struct SpectralGap {
  double lambda_2 = 0.0;  // second eigenvalue of M
  double gap = 0.0;       // 1 - lambda_2
};

/// Gap of the Metropolis walk on g; lambda_2 equals the largest I(.; M).
SpectralGap spectral_gap(const Graph& g, const SolverOptions& options = {});

}  // namespace gmoran
