#pragma once

#include "gmoran/error.hpp"
#include "gmoran/graph.hpp"
#include "gmoran/weights.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gmoran {

/// A real function on graph nodes with its mean and centered copy.
class NodeVector {
 public:
  NodeVector() = default;
  explicit NodeVector(Eigen::VectorXd values);
  NodeVector(std::initializer_list<double> values);

  Index size() const noexcept { return values_.size(); }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double mean() const noexcept { return mean_; }
  const Eigen::VectorXd& centered() const noexcept { return centered_; }
  double sum_sq() const noexcept { return sum_sq_; }

  /// Centered sum of squares at or below 1e-14 * n: Moran's I is undefined.
  bool is_constant() const noexcept;
  /// Population standard deviation over |mean|; infinity when the mean is 0.
  double coefficient_of_variation() const noexcept;

 private:
  Eigen::VectorXd values_;
  double mean_ = 0.0;
  Eigen::VectorXd centered_;
  double sum_sq_ = 0.0;
};

/// Receives non-fatal diagnostics (e.g. near-constant input). Defaults to
/// writing one line to stderr.
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& message);

/// Moran's I for an Eigen vector and any dense or sparse Eigen matrix:
/// (n / w) x^T W x / x^T x with x the centered vector and w = sum |W_ij|.
template <typename DerivedV, typename DerivedW>
typename DerivedV::Scalar moran_index(const Eigen::MatrixBase<DerivedV>& v, const DerivedW& w) {
  using Scalar = typename DerivedV::Scalar;
  if (w.rows() != v.size() || w.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match weight matrix");
  }
  const auto n = static_cast<Scalar>(v.size());
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x = v.array() - v.mean();
  const Scalar ss = x.squaredNorm();
  if (ss <= Scalar(1e-14) * n) throw Error(ErrorCode::ConstantVector, "vector is constant");
  const Scalar total = w.cwiseAbs().sum();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> wx = w * x;
  return n / total * x.dot(wx) / ss;
}

double moran_i(const NodeVector& v, const WeightMatrix& w);

/// Per-node shares n x_i (W x)_i / (w x^T x); they sum to moran_i.
Eigen::VectorXd local_moran(const NodeVector& v, const WeightMatrix& w);

/// |I_i(v; A) - I_i(v; M)| per node.
Eigen::VectorXd d_i_diagnostic(const NodeVector& v, const Graph& g);

struct ScatterData {
  Eigen::VectorXd v;
  Eigen::VectorXd u;  // lagged variable W v
  double slope = 0.0;
  double intercept = 0.0;
  /// The slope equals Moran's I only for row-stochastic weights.
  bool slope_is_moran = false;
};

ScatterData moran_scatter(const NodeVector& v, const WeightMatrix& w);

struct PermutationOptions {
  std::size_t permutations = 999;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct PermutationResult {
  double observed = 0.0;
  double null_mean = 0.0;
  double null_sd = 0.0;
  double p_value = 1.0;
  double expected_null = 0.0;  // -1 / (n - 1)
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
};

/// Randomization test: node values are permuted with one counter-based
/// stream per permutation index. Two-sided p-value
/// (1 + #{|I_k - mean| >= |I_obs - mean|}) / (N + 1). Results do not depend
/// on `workers`.
PermutationResult permutation_test(const NodeVector& v, const WeightMatrix& w, const PermutationOptions& options);

/// Moran's I of each permutation, in permutation-index order.
std::vector<double> permutation_samples(const NodeVector& v, const WeightMatrix& w, const PermutationOptions& options);

struct MoranReport {
  WeightKind kind = WeightKind::Custom;
  std::vector<std::string> node_ids;
  double global_i = 0.0;
  double expected_null = 0.0;
  Eigen::VectorXd local_i;
  Eigen::VectorXd lagged;
  /// Local scores for kinds the local statistic was not designed for (P, L,
  /// M2, custom).
  bool local_is_extension = false;
  std::optional<double> p_value;
  std::optional<std::size_t> permutations;
  std::optional<std::uint64_t> seed;
};

MoranReport make_moran_report(const NodeVector& v, const WeightMatrix& w, std::vector<std::string> node_ids,
                              const std::optional<PermutationOptions>& test = std::nullopt);

}  // namespace gmoran
