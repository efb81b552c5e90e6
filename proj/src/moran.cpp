#include "gmoran/moran.hpp"

#include "gmoran/random.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace gmoran {

namespace {

std::function<void(const std::string&)>& sink() {
  static std::function<void(const std::string&)> s = [](const std::string& m) {
    std::cerr << "warning: " << m << '\n';
  };
  return s;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void check_scoreable(const NodeVector& v, const WeightMatrix& w) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "vector length does not match weight matrix");
  if (v.is_constant()) throw Error(ErrorCode::ConstantVector, "vector is constant; Moran's I is undefined");
  if (v.coefficient_of_variation() < 1e-6) {
    warn("vector is nearly constant (coefficient of variation < 1e-6); Moran's I is unstable");
  }
}

double score_centered(const Eigen::VectorXd& x, double ss, const WeightMatrix& w) {
  const double n = static_cast<double>(x.size());
  return n / w.total_weight() * w.quadratic_form(x) / ss;
}

}  // namespace

NodeVector::NodeVector(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) throw Error(ErrorCode::EmptyGraph, "node vector is empty");
  mean_ = values_.mean();
  centered_ = values_.array() - mean_;
  sum_sq_ = centered_.squaredNorm();
}

NodeVector::NodeVector(std::initializer_list<double> values)
    : NodeVector(Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Index>(values.size()))) {}

bool NodeVector::is_constant() const noexcept { return sum_sq_ <= 1e-14 * static_cast<double>(size()); }

double NodeVector::coefficient_of_variation() const noexcept {
  if (mean_ == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(sum_sq_ / static_cast<double>(size())) / std::abs(mean_);
}

void set_warning_sink(std::function<void(const std::string&)> s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

double moran_i(const NodeVector& v, const WeightMatrix& w) {
  check_scoreable(v, w);
  return score_centered(v.centered(), v.sum_sq(), w);
}

Eigen::VectorXd local_moran(const NodeVector& v, const WeightMatrix& w) {
  check_scoreable(v, w);
  const double n = static_cast<double>(v.size());
  const Eigen::VectorXd& x = v.centered();
  return (n / (w.total_weight() * v.sum_sq())) * x.cwiseProduct(w.apply(x));
}

Eigen::VectorXd d_i_diagnostic(const NodeVector& v, const Graph& g) {
  const auto a = build_weights(g, WeightKind::Adjacency);
  const auto m = build_weights(g, WeightKind::Metropolis);
  return (local_moran(v, a) - local_moran(v, m)).cwiseAbs();
}

ScatterData moran_scatter(const NodeVector& v, const WeightMatrix& w) {
  check_scoreable(v, w);
  ScatterData s;
  s.v = v.values();
  s.u = w.apply(v.values());
  const double u_mean = s.u.mean();
  s.slope = v.centered().dot((s.u.array() - u_mean).matrix()) / v.sum_sq();
  s.intercept = u_mean - s.slope * v.mean();
  s.slope_is_moran = w.traits().row_stochastic;
  return s;
}

std::vector<double> permutation_samples(const NodeVector& v, const WeightMatrix& w, const PermutationOptions& options) {
  if (options.permutations < 1) throw Error(ErrorCode::InvalidParam, "need at least one permutation");
  check_scoreable(v, w);
  const std::size_t count = options.permutations;
  const Index n = v.size();
  std::vector<double> samples(count);
  const CounterRng base(options.seed, 0x5e7a11);

  auto run = [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd x(n);
    for (std::size_t k = begin; k < end; ++k) {
      CounterRng rng = base.substream(k);
      x = v.centered();
      for (Index i = n - 1; i > 0; --i) {
        std::swap(x(i), x(static_cast<Index>(rng.below(static_cast<std::uint64_t>(i) + 1))));
      }
      samples[k] = score_centered(x, v.sum_sq(), w);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(count)));
  if (workers == 1) {
    run(0, count);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(count, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }
  return samples;
}

PermutationResult permutation_test(const NodeVector& v, const WeightMatrix& w, const PermutationOptions& options) {
  const auto samples = permutation_samples(v, w, options);
  PermutationResult r;
  r.observed = moran_i(v, w);
  r.permutations = samples.size();
  r.seed = options.seed;
  r.expected_null = -1.0 / static_cast<double>(v.size() - 1);
  const double count = static_cast<double>(samples.size());
  r.null_mean = std::accumulate(samples.begin(), samples.end(), 0.0) / count;
  double var = 0.0;
  for (double s : samples) var += (s - r.null_mean) * (s - r.null_mean);
  r.null_sd = samples.size() > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;
  const double obs_dev = std::abs(r.observed - r.null_mean);
  const double slack = 1e-12 * std::max(1.0, obs_dev);
  const auto extreme = std::count_if(samples.begin(), samples.end(),
                                     [&](double s) { return std::abs(s - r.null_mean) >= obs_dev - slack; });
  r.p_value = (1.0 + static_cast<double>(extreme)) / (count + 1.0);
  return r;
}

MoranReport make_moran_report(const NodeVector& v, const WeightMatrix& w, std::vector<std::string> node_ids,
                              const std::optional<PermutationOptions>& test) {
  if (static_cast<Index>(node_ids.size()) != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "node id count does not match vector length");
  }
  MoranReport r;
  r.kind = w.kind();
  r.node_ids = std::move(node_ids);
  r.global_i = moran_i(v, w);
  r.expected_null = -1.0 / static_cast<double>(v.size() - 1);
  r.local_i = local_moran(v, w);
  r.lagged = w.apply(v.values());
  r.local_is_extension = !(w.kind() == WeightKind::Adjacency || w.kind() == WeightKind::Metropolis);
  if (test) {
    const auto res = permutation_test(v, w, *test);
    r.p_value = res.p_value;
    r.permutations = res.permutations;
    r.seed = res.seed;
  }
  return r;
}

}  // namespace gmoran
