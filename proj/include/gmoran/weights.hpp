#pragma once

#include "gmoran/graph.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <optional>
#include <string_view>
#include <variant>

namespace gmoran {

enum class WeightKind { Adjacency, RowStochastic, Laplacian, Metropolis, MetropolisSquared, Custom };

/// Short names used on the command line and in reports: A, P, L, M, M2, custom.
std::string_view to_string(WeightKind kind) noexcept;
std::optional<WeightKind> parse_weight_kind(std::string_view name) noexcept;

/// Invariants a matrix happens to satisfy, evaluated at construction.
struct WeightTraits {
  bool symmetric = false;
  bool nonnegative = false;
  bool row_stochastic = false;
  bool column_stochastic = false;
  bool constant_row_sum = false;
  double row_sum = 0.0;  // common row sum when constant_row_sum

  bool bistochastic() const noexcept { return nonnegative && row_stochastic && column_stochastic; }
};

/// Matrices with more nodes than this are stored sparse.
inline constexpr Index kDefaultDenseThreshold = 2000;

struct WeightOptions {
  Index dense_threshold = kDefaultDenseThreshold;
};

/// A nonzero square weight matrix tagged with the kind it was built as.
///
/// Storage is dense or sparse; `apply` and `quadratic_form` work on either.
/// `total_weight` is the sum of absolute entries and `w_degrees` the absolute
/// row sums.
class WeightMatrix {
 public:
  using Dense = Eigen::MatrixXd;
  using Sparse = Eigen::SparseMatrix<double>;

  /// Any nonzero square matrix. Throws DimensionMismatch for non-square input
  /// and InvalidParam for the zero matrix.
  static WeightMatrix custom(Dense m);
  static WeightMatrix custom(Sparse m);

  WeightKind kind() const noexcept { return kind_; }
  Index size() const noexcept { return n_; }
  double total_weight() const noexcept { return total_weight_; }
  const Eigen::VectorXd& w_degrees() const noexcept { return w_degrees_; }
  const WeightTraits& traits() const noexcept { return traits_; }
  /// Construction tolerance: 1e-12 dense, 1e-10 sparse.
  double tolerance() const noexcept { return is_dense() ? 1e-12 : 1e-10; }

  bool is_dense() const noexcept { return std::holds_alternative<Dense>(storage_); }
  const Dense& dense() const { return std::get<Dense>(storage_); }
  const Sparse& sparse() const { return std::get<Sparse>(storage_); }
  Dense to_dense() const;
  Sparse to_sparse() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;
  double quadratic_form(const Eigen::VectorXd& x) const;
  double entry(Index i, Index j) const;

  /// Symmetric part (W + W^T) / 2, tagged Custom.
  WeightMatrix symmetric_part() const;
  /// W W^T; tagged MetropolisSquared when this is Metropolis, Custom otherwise.
  WeightMatrix gram() const;

 private:
  friend WeightMatrix build_weights(const Graph&, WeightKind, const WeightOptions&);
  WeightMatrix(WeightKind kind, Dense m);
  WeightMatrix(WeightKind kind, Sparse m);
  void finalize();

  WeightKind kind_ = WeightKind::Custom;
  Index n_ = 0;
  std::variant<Dense, Sparse> storage_;
  double total_weight_ = 0.0;
  Eigen::VectorXd w_degrees_;
  WeightTraits traits_;
};

/// Builds A, P = D^-1 A, L = D - A, the Metropolis matrix M with off-diagonal
/// A_ij / max(d_i, d_j) and diagonal 1 - sum_{k != i} M_ik, or M^2.
/// Throws IsolatedNode for P, M and M^2 when some node has degree 0.
WeightMatrix build_weights(const Graph& g, WeightKind kind, const WeightOptions& options = {});

/// True iff every row and column sum is within tol of 1 and no entry is
/// below -tol.
bool validate_bistochastic(const WeightMatrix& w, double tol);

/// Sum over i != j of |a_ij - b_ij|.
template <typename DerivedA, typename DerivedB>
double l1_offdiag_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b);

double l1_offdiag_distance(const WeightMatrix& a, const WeightMatrix& b);

}  // namespace gmoran

#include "gmoran/error.hpp"

namespace gmoran {

template <typename DerivedA, typename DerivedB>
double l1_offdiag_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
  }
  const auto diff = (a - b).cwiseAbs().eval();
  return static_cast<double>(diff.sum() - diff.diagonal().sum());
}

}  // namespace gmoran
