#pragma once

#include <cstdint>
#include <functional>

#include "gfopt/problem.hpp"
#include "gfopt/rng.hpp"
#include "gfopt/vec.hpp"

namespace gfopt {

/// Smoothing radius delta and the constant c bounding the smoothed
/// gradient's Lipschitz modulus by c*L*sqrt(d)/delta.  The asymptotically
/// exact constant is sqrt(pi/2) ~ 1.2533; the default 1.5 is conservative.
struct SmoothingParams {
  double delta = 0.1;
  double smoothing_constant = 1.5;

  void validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("SmoothingParams: delta must be > 0");
    if (!(smoothing_constant > 0.0))
      throw std::invalid_argument("SmoothingParams: smoothing_constant must be > 0");
  }
};

/// One two-point gradient estimate
///   g = (d / (2 delta)) * (f(x + delta w) - f(x - delta w)) * w
/// with w uniform on the unit sphere.  Costs exactly two oracle calls and
/// is always collinear with its direction.
struct GradientEstimate {
  Vec direction;
  double value_plus = 0.0;
  double value_minus = 0.0;
  Vec estimate;
  int oracle_calls = 2;

  /// Scalar s with estimate == s * direction.
  double coefficient(double dim, double delta) const {
    return dim / (2.0 * delta) * (value_plus - value_minus);
  }
};

/// w uniform on the unit sphere in R^dim: dim gaussians, normalized.
/// Draws with pre-normalization norm below 1e-12 are rejected and redrawn.
Vec sample_unit_sphere(int dim, RngStream& rng);

/// u uniform in the closed unit ball: sphere direction scaled by r^(1/dim)
/// with r uniform on [0,1).  Exact and rejection-free in any dimension.
Vec sample_unit_ball(int dim, RngStream& rng);

GradientEstimate two_point_estimate(const ProblemSpec& problem, const Vec& x,
                                    const SmoothingParams& params, RngStream& rng);

/// Stochastic variant: one token xi and one direction w per call, both
/// oracle evaluations sharing the same xi.
GradientEstimate two_point_estimate_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                               const SmoothingParams& params, RngStream& rng);

/// Which batch kernel drives a Monte-Carlo estimate.  Serial is the
/// reference implementation; Parallel is the OpenMP kernel.  Both consume
/// per-sample substreams and reduce partial sums in fixed chunk order, so
/// their outputs are bit-identical for any thread count.
enum class Exec { Serial, Parallel };

struct ValueEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
};

/// Monte-Carlo estimate of the uniform smoothing
///   f_delta(x) = E_{u ~ ball} f(x + delta u).
ValueEstimate smoothed_value(const ProblemSpec& problem, const Vec& x,
                             const SmoothingParams& params, long n_samples, const RngStream& rng,
                             Exec exec = Exec::Parallel);

/// Batch of two-point estimates and its summary statistics.  `mean`
/// estimates grad f_delta(x); `mean_norm_sq` is the empirical mean of
/// ||g||^2 (the quantity the second-moment bound constrains).
struct GradientBatch {
  Vec mean;
  Vec std_error;           // per-coordinate standard error of `mean`
  double mean_norm_sq = 0.0;
  double mean_norm_sq_std_error = 0.0;
  long n_samples = 0;

  /// ||mean|| with a direction-free standard error (root sum of squared
  /// per-coordinate errors, an upper bound for the error of the norm).
  double stationarity_norm() const { return norm(mean); }
  double stationarity_std_error() const { return norm(std_error); }

  /// Unbiased estimate of ||grad f_delta(x)||^2: subtracts the estimator
  /// variance that inflates ||mean||^2.
  double norm_sq_debiased() const { return norm_sq(mean) - norm_sq(std_error); }
};

GradientBatch smoothed_gradient(const ProblemSpec& problem, const Vec& x,
                                const SmoothingParams& params, long n_samples,
                                const RngStream& rng, Exec exec = Exec::Parallel);

GradientBatch smoothed_gradient_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                           const SmoothingParams& params, long n_samples,
                                           const RngStream& rng, Exec exec = Exec::Parallel);

/// Generic deterministic batch reduction: sample k in [0, n) is produced by
/// `make(rng.substream(k))` and accumulated in chunk-major order.  Exposed
/// so verification code can batch arbitrary estimators (e.g. fault-injected
/// ones) through the same kernel.
GradientBatch batch_estimate(int dim, long n_samples, const RngStream& rng,
                             const std::function<Vec(RngStream&)>& make, Exec exec);

namespace detail {

/// Allocation-free core of the two-point estimate for hot loops: fills `w`
/// with the sphere draw, uses `probe` as scratch, and returns the scalar s
/// with g = s * w.
double two_point_coefficient(const ProblemSpec& problem, const Vec& x,
                             const SmoothingParams& params, RngStream& rng, Vec& w, Vec& probe);

double two_point_coefficient_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                        const SmoothingParams& params, RngStream& rng, Vec& w,
                                        Vec& probe);

void fill_unit_sphere(Vec& w, RngStream& rng);

}  // namespace detail

}  // namespace gfopt
