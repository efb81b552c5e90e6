#pragma once

#include "gmoran/error.hpp"
#include "gmoran/graph.hpp"
#include "gmoran/random.hpp"

#include <Eigen/Core>

#include <cmath>

namespace gmoran::testing {

// Moran's I written out term by term, no shared code with the library.
inline double naive_moran(const Eigen::VectorXd& v, const Eigen::MatrixXd& w) {
  const Index n = v.size();
  double mean = 0.0;
  for (Index i = 0; i < n; ++i) mean += v(i);
  mean /= static_cast<double>(n);
  double num = 0.0, den = 0.0, total = 0.0;
  for (Index i = 0; i < n; ++i) {
    den += (v(i) - mean) * (v(i) - mean);
    for (Index j = 0; j < n; ++j) {
      num += w(i, j) * (v(i) - mean) * (v(j) - mean);
      total += std::abs(w(i, j));
    }
  }
  return static_cast<double>(n) / total * num / den;
}

inline Eigen::VectorXd random_vector(Index n, CounterRng& rng) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.uniform() - 0.5;
  return v;
}

// Approximately normal entries (sum of 12 uniforms), for directions that
// should not favour the cube's corners.
inline Eigen::VectorXd gaussian_vector(Index n, CounterRng& rng) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) {
    double s = -6.0;
    for (int k = 0; k < 12; ++k) s += rng.uniform();
    v(i) = s;
  }
  return v;
}

template <typename F>
ErrorCode thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected gmoran::Error");
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace gmoran::testing
