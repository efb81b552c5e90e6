#include "gmoran/weights.hpp"

#include "gmoran/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gmoran {

std::string_view to_string(WeightKind kind) noexcept {
  switch (kind) {
    case WeightKind::Adjacency: return "A";
    case WeightKind::RowStochastic: return "P";
    case WeightKind::Laplacian: return "L";
    case WeightKind::Metropolis: return "M";
    case WeightKind::MetropolisSquared: return "M2";
    case WeightKind::Custom: return "custom";
  }
  return "custom";
}

std::optional<WeightKind> parse_weight_kind(std::string_view name) noexcept {
  if (name == "A") return WeightKind::Adjacency;
  if (name == "P") return WeightKind::RowStochastic;
  if (name == "L") return WeightKind::Laplacian;
  if (name == "M") return WeightKind::Metropolis;
  if (name == "M2" || name == "M^2") return WeightKind::MetropolisSquared;
  if (name == "custom") return WeightKind::Custom;
  return std::nullopt;
}

WeightMatrix::WeightMatrix(WeightKind kind, Dense m) : kind_(kind), n_(m.rows()), storage_(std::move(m)) {
  finalize();
}

WeightMatrix::WeightMatrix(WeightKind kind, Sparse m) : kind_(kind), n_(m.rows()), storage_(std::move(m)) {
  std::get<Sparse>(storage_).makeCompressed();
  finalize();
}

WeightMatrix WeightMatrix::custom(Dense m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");
  return WeightMatrix(WeightKind::Custom, std::move(m));
}

WeightMatrix WeightMatrix::custom(Sparse m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");
  return WeightMatrix(WeightKind::Custom, std::move(m));
}

void WeightMatrix::finalize() {
  if (n_ == 0) throw Error(ErrorCode::EmptyGraph, "weight matrix has no rows");
  Eigen::VectorXd row_sum, col_sum;
  double max_abs = 0.0;
  double asym = 0.0;
  bool nonneg = true;
  if (is_dense()) {
    const auto& m = dense();
    w_degrees_ = m.cwiseAbs().rowwise().sum();
    row_sum = m.rowwise().sum();
    col_sum = m.colwise().sum().transpose();
    max_abs = m.cwiseAbs().maxCoeff();
    asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    nonneg = m.minCoeff() >= -tolerance();
  } else {
    const auto& m = sparse();
    w_degrees_ = Eigen::VectorXd::Zero(n_);
    row_sum = Eigen::VectorXd::Zero(n_);
    col_sum = Eigen::VectorXd::Zero(n_);
    for (Index k = 0; k < m.outerSize(); ++k) {
      for (Sparse::InnerIterator it(m, k); it; ++it) {
        w_degrees_(it.row()) += std::abs(it.value());
        row_sum(it.row()) += it.value();
        col_sum(it.col()) += it.value();
        max_abs = std::max(max_abs, std::abs(it.value()));
        nonneg = nonneg && it.value() >= -tolerance();
      }
    }
    Sparse t = m.transpose();
    Sparse d = m - t;
    for (Index k = 0; k < d.outerSize(); ++k)
      for (Sparse::InnerIterator it(d, k); it; ++it) asym = std::max(asym, std::abs(it.value()));
  }
  total_weight_ = w_degrees_.sum();
  if (!(total_weight_ > 0.0)) throw Error(ErrorCode::InvalidParam, "weight matrix is the zero matrix");

  const double tol = tolerance();
  traits_.symmetric = asym <= tol * std::max(1.0, max_abs);
  traits_.nonnegative = nonneg;
  traits_.row_stochastic = nonneg && ((row_sum.array() - 1.0).abs() <= tol).all();
  traits_.column_stochastic = nonneg && ((col_sum.array() - 1.0).abs() <= tol).all();
  const double r0 = row_sum(0);
  traits_.constant_row_sum = ((row_sum.array() - r0).abs() <= tol * std::max(1.0, std::abs(r0))).all();
  traits_.row_sum = traits_.constant_row_sum ? r0 : 0.0;
}

WeightMatrix::Dense WeightMatrix::to_dense() const {
  if (is_dense()) return dense();
  return Dense(sparse());
}

WeightMatrix::Sparse WeightMatrix::to_sparse() const {
  if (!is_dense()) return sparse();
  return dense().sparseView();
}

Eigen::VectorXd WeightMatrix::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match weight matrix");
  if (is_dense()) return dense() * x;
  return sparse() * x;
}

Eigen::VectorXd WeightMatrix::apply_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match weight matrix");
  if (is_dense()) return dense().transpose() * x;
  return sparse().transpose() * x;
}

double WeightMatrix::quadratic_form(const Eigen::VectorXd& x) const { return x.dot(apply(x)); }

double WeightMatrix::entry(Index i, Index j) const {
  if (is_dense()) return dense()(i, j);
  return sparse().coeff(i, j);
}

WeightMatrix WeightMatrix::symmetric_part() const {
  if (is_dense()) {
    Dense s = 0.5 * (dense() + dense().transpose());
    return WeightMatrix(WeightKind::Custom, std::move(s));
  }
  Sparse t = sparse().transpose();
  Sparse s = 0.5 * (sparse() + t);
  return WeightMatrix(WeightKind::Custom, std::move(s));
}

WeightMatrix WeightMatrix::gram() const {
  const WeightKind kind = kind_ == WeightKind::Metropolis ? WeightKind::MetropolisSquared : WeightKind::Custom;
  if (is_dense()) {
    Dense g = dense() * dense().transpose();
    return WeightMatrix(kind, std::move(g));
  }
  Sparse t = sparse().transpose();
  Sparse g = (sparse() * t).pruned();
  return WeightMatrix(kind, std::move(g));
}

namespace {

std::vector<Eigen::Triplet<double>> kind_triplets(const Graph& g, WeightKind kind) {
  const Index n = g.size();
  const auto& deg = g.degree_stats().degrees;
  auto d = [&](Index i) { return static_cast<double>(deg[static_cast<std::size_t>(i)]); };
  if (kind == WeightKind::RowStochastic || kind == WeightKind::Metropolis) {
    for (Index i = 0; i < n; ++i) {
      if (deg[static_cast<std::size_t>(i)] == 0) {
        throw Error(ErrorCode::IsolatedNode, "node '" + g.id(i) + "' has degree 0");
      }
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * g.edges().size() + static_cast<std::size_t>(n));
  switch (kind) {
    case WeightKind::Adjacency:
      for (auto [u, v] : g.edges()) {
        trip.emplace_back(u, v, 1.0);
        trip.emplace_back(v, u, 1.0);
      }
      break;
    case WeightKind::RowStochastic:
      for (auto [u, v] : g.edges()) {
        trip.emplace_back(u, v, 1.0 / d(u));
        trip.emplace_back(v, u, 1.0 / d(v));
      }
      break;
    case WeightKind::Laplacian:
      for (Index i = 0; i < n; ++i)
        if (d(i) > 0) trip.emplace_back(i, i, d(i));
      for (auto [u, v] : g.edges()) {
        trip.emplace_back(u, v, -1.0);
        trip.emplace_back(v, u, -1.0);
      }
      break;
    case WeightKind::Metropolis: {
      Eigen::VectorXd off = Eigen::VectorXd::Zero(n);
      for (auto [u, v] : g.edges()) {
        const double m = 1.0 / std::max(d(u), d(v));
        trip.emplace_back(u, v, m);
        trip.emplace_back(v, u, m);
        off(u) += m;
        off(v) += m;
      }
      for (Index i = 0; i < n; ++i) {
        // off(i) <= 1 exactly in real arithmetic; drop round-off below zero
        const double diag = 1.0 - off(i);
        if (diag > 4 * std::numeric_limits<double>::epsilon()) trip.emplace_back(i, i, diag);
      }
      break;
    }
    default:
      break;
  }
  return trip;
}

}  // namespace

WeightMatrix build_weights(const Graph& g, WeightKind kind, const WeightOptions& options) {
  if (kind == WeightKind::Custom) {
    throw Error(ErrorCode::InvalidParam, "custom weights are built with WeightMatrix::custom");
  }
  if (kind == WeightKind::MetropolisSquared) {
    return build_weights(g, WeightKind::Metropolis, options).gram();
  }
  const Index n = g.size();
  auto trip = kind_triplets(g, kind);
  if (n <= options.dense_threshold) {
    WeightMatrix::Dense m = WeightMatrix::Dense::Zero(n, n);
    for (const auto& t : trip) m(t.row(), t.col()) += t.value();
    return WeightMatrix(kind, std::move(m));
  }
  WeightMatrix::Sparse m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return WeightMatrix(kind, std::move(m));
}

bool validate_bistochastic(const WeightMatrix& w, double tol) {
  Eigen::VectorXd rows, cols;
  double min_entry = 0.0;
  if (w.is_dense()) {
    rows = w.dense().rowwise().sum();
    cols = w.dense().colwise().sum().transpose();
    min_entry = w.dense().minCoeff();
  } else {
    const auto& m = w.sparse();
    rows = Eigen::VectorXd::Zero(w.size());
    cols = Eigen::VectorXd::Zero(w.size());
    for (Index k = 0; k < m.outerSize(); ++k) {
      for (WeightMatrix::Sparse::InnerIterator it(m, k); it; ++it) {
        rows(it.row()) += it.value();
        cols(it.col()) += it.value();
        min_entry = std::min(min_entry, it.value());
      }
    }
  }
  return min_entry >= -tol && ((rows.array() - 1.0).abs() <= tol).all() && ((cols.array() - 1.0).abs() <= tol).all();
}

double l1_offdiag_distance(const WeightMatrix& a, const WeightMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in size");
  if (a.is_dense() && b.is_dense()) return l1_offdiag_distance(a.dense(), b.dense());
  WeightMatrix::Sparse diff = a.to_sparse() - b.to_sparse();
  double total = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (WeightMatrix::Sparse::InnerIterator it(diff, k); it; ++it)
      if (it.row() != it.col()) total += std::abs(it.value());
  return total;
}

}  // namespace gmoran
