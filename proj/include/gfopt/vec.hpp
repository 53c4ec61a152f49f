#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace gfopt {

/// Dense point in R^d.  All arithmetic in the toolkit is double precision.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_sq(const Vec& a) { return dot(a, a); }

/// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec scaled(const Vec& x, double alpha) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i];
  return y;
}

inline bool all_finite(const Vec& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline Vec unit_axis(std::size_t dim, std::size_t axis, double length = 1.0) {
  Vec e(dim, 0.0);
  e[axis] = length;
  return e;
}

}  // namespace gfopt
