#pragma once

#include "gmoran/graph.hpp"
#include "gmoran/moran.hpp"
#include "gmoran/weights.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gmoran {

struct SolverOptions {
  Index dense_threshold = kDefaultDenseThreshold;
  double tol = 1e-10;           // relative residual for the iterative path
  Index max_iterations = 10000; // Lanczos restarts
  Index nev = 6;                // eigenpairs from each end on the sparse path
  Index ncv = 0;
  std::uint64_t seed = 0;
};

/// Orthonormal basis U of the mean-zero subspace, given implicitly by the
/// Householder reflector H with H e_1 = (1/sqrt(n)) 1. U is columns 2..n of H.
class Projection {
 public:
  explicit Projection(Index n);

  Index size() const noexcept { return n_; }
  /// U y for y of length n - 1.
  Eigen::VectorXd lift(const Eigen::VectorXd& y) const;
  /// U^T x for x of length n.
  Eigen::VectorXd restrict_to(const Eigen::VectorXd& x) const;
  /// x - mean(x).
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  /// Explicit n x (n - 1) basis.
  Eigen::MatrixXd basis() const;
  /// U^T W U for symmetric dense W, without forming U.
  Eigen::MatrixXd reduce(const Eigen::MatrixXd& w) const;

 private:
  Eigen::VectorXd reflect(Eigen::VectorXd x) const;
  Index n_;
  Eigen::VectorXd h_;
  double tau_;
};

struct Spectrum {
  WeightKind kind = WeightKind::Custom;
  bool ascending = false;     // true for L
  bool complete = true;       // false when only the extreme eigenpairs were computed
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::VectorXd residuals;  // ||W phi - lambda phi||
};

/// Full decomposition when dense, `nev` eigenpairs from each end when sparse.
/// Throws NotSymmetric or ConvergenceFailure.
Spectrum symmetric_spectrum(const WeightMatrix& w, const SolverOptions& options = {});

enum class RangeMethod { GeneralizedSymmetric, LagrangeSymmetrized, RegularShortcut };
std::string_view to_string(RangeMethod m) noexcept;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(const Interval& other, double slack = 0.0) const noexcept {
    return lo <= other.lo + slack && other.hi <= hi + slack;
  }
};

struct RangeBounds {
  Interval degree;
  Interval eigenvalue;
};

struct SpectralRange {
  WeightKind kind = WeightKind::Custom;
  RangeMethod method = RangeMethod::GeneralizedSymmetric;
  double i_min = 0.0;
  double i_max = 0.0;
  Eigen::VectorXd v_min;  // mean zero, unit norm
  Eigen::VectorXd v_max;
  double scale = 1.0;     // n / w
  double lambda_min = 0.0;  // extreme eigenvalues before scaling
  double lambda_max = 0.0;
  Index multiplicity_min = 1;
  Index multiplicity_max = 1;
  double residual_min = 0.0;
  double residual_max = 0.0;
  std::optional<Interval> degree_bounds;      // kinds A and P
  std::optional<Interval> eigenvalue_bounds;

  Interval range() const noexcept { return {i_min, i_max}; }
  bool degenerate() const noexcept { return multiplicity_min > 1 || multiplicity_max > 1; }
};

/// Extreme values of I(.; W) over non-constant vectors for symmetric W, from
/// the extreme eigenpairs of U^T W U. Constant-row-sum W uses the ordinary
/// spectrum with one copy of the row sum removed.
SpectralRange generalized_extremes(const WeightMatrix& w, const SolverOptions& options = {});

/// Range for P = D^-1 A through its symmetric part.
SpectralRange lagrange_extremes_p(const Graph& g, const SolverOptions& options = {});

/// Degree and adjacency-eigenvalue intervals enclosing the range of A or P.
RangeBounds adjacency_range_bounds(const Graph& g, WeightKind kind, const SolverOptions& options = {});

/// Range for a built-in kind, with the enclosing bounds attached for A and P.
SpectralRange achievable_range(const Graph& g, WeightKind kind, const SolverOptions& options = {});

struct Decomposition {
  Eigen::VectorXd coefficients;  // alpha_i = phi_i . x
  Eigen::VectorXd eigenvalues;   // of U^T W U, descending
  Eigen::MatrixXd basis;         // phi_i = U y_i, mean zero
  double scale = 1.0;            // n / w
  double reconstructed_i = 0.0;  // scale * sum alpha^2 lambda / sum alpha^2
};

/// Dense only; throws DenseOnly above the threshold.
Decomposition decompose_i(const NodeVector& v, const WeightMatrix& w, const SolverOptions& options = {});

struct FiedlerPair {
  double value = 0.0;  // mu_2
  NodeVector vector;
};

/// Unit eigenvector of L for mu_2, first nonzero coordinate positive.
/// Throws Disconnected with the component count.
FiedlerPair fiedler_pair(const Graph& g, const SolverOptions& options = {});
NodeVector fiedler_vector(const Graph& g, const SolverOptions& options = {});

/// sqrt(sum over edges of (v_i - v_j)^2).
template <typename Derived>
double dirichlet_energy(const Eigen::MatrixBase<Derived>& v, const Graph& g) {
  if (v.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match graph");
  double s = 0.0;
  for (auto [a, b] : g.edges()) {
    const double d = static_cast<double>(v(a) - v(b));
    s += d * d;
  }
  return std::sqrt(s);
}

inline double dirichlet_energy(const NodeVector& v, const Graph& g) { return dirichlet_energy(v.values(), g); }

}  // namespace gmoran
