#include "gfopt/problem.hpp"

#include <cmath>

namespace gfopt {

StochasticProblemSpec as_stochastic(const ProblemSpec& problem) {
  StochasticProblemSpec s(
      problem.name() + "/stochastic", problem.meta(),
      [](RngStream&) { return SampleToken{0}; },
      [problem](const Vec& x, SampleToken) { return problem.value(x); });
  s.set_mean_oracle([problem](const Vec& x) { return problem.value(x); });
  s.set_default_start(problem.default_start());
  return s;
}

SpotCheckResult lipschitz_spot_check(const ProblemSpec& problem, long n_pairs, RngStream rng,
                                     double box_radius) {
  if (n_pairs < 1) throw std::invalid_argument("lipschitz_spot_check: n_pairs must be >= 1");
  const int d = problem.dim();
  SpotCheckResult result;
  Vec x(d), y(d);
  for (long k = 0; k < n_pairs; ++k) {
    for (int i = 0; i < d; ++i) x[i] = box_radius * (2.0 * rng.next_double() - 1.0);
    for (int i = 0; i < d; ++i) y[i] = box_radius * (2.0 * rng.next_double() - 1.0);
    double dist_sq = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = x[i] - y[i];
      dist_sq += t * t;
    }
    if (dist_sq == 0.0) continue;
    const double ratio = std::abs(problem.value(x) - problem.value(y)) / std::sqrt(dist_sq);
    if (ratio > result.max_ratio) {
      result.max_ratio = ratio;
      result.worst_x = x;
      result.worst_y = y;
    }
  }
  result.violation = result.max_ratio > problem.meta().lipschitz;
  return result;
}

}  // namespace gfopt
