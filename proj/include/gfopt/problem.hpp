#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "gfopt/rng.hpp"
#include "gfopt/vec.hpp"

namespace gfopt {

/// Thrown when a value oracle returns a non-finite number or an iterate
/// leaves the configured divergence guard; carries enough context to
/// reproduce the failing call.
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

/// User-declared problem metadata.  `lipschitz` is L for deterministic
/// problems and G (the root mean square Lipschitz bound) for stochastic
/// ones; `value_gap` bounds f(x0) - inf f.  The toolkit never estimates
/// these, it only spot-checks declared values.
struct ProblemMeta {
  int dim = 1;
  double lipschitz = 1.0;
  double value_gap = 1.0;
  std::optional<double> known_optimum;

  void validate() const {
    if (dim < 1) throw std::invalid_argument("ProblemMeta: dim must be >= 1");
    if (!(lipschitz > 0.0)) throw std::invalid_argument("ProblemMeta: lipschitz must be > 0");
    if (!(value_gap > 0.0)) throw std::invalid_argument("ProblemMeta: value_gap must be > 0");
  }
};

/// Closed interval [lo, hi]; the exact reach of the generalized slopes over
/// a 1-D ball for piecewise-linear problems.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }

  /// Element of the interval with the smallest absolute value.
  double min_norm_element() const {
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return (lo > 0.0) ? lo : hi;
  }
};

/// Black-box deterministic problem: a value oracle plus declared metadata.
/// The optional exact_gradient / goldstein_1d hooks exist only for
/// verification on structured instances and are never consulted by the
/// optimizers.
class ProblemSpec {
 public:
  ProblemSpec() = default;
  ProblemSpec(std::string name, ProblemMeta meta, std::function<double(const Vec&)> oracle)
      : name_(std::move(name)),
        meta_(meta),
        oracle_(std::move(oracle)),
        calls_(std::make_shared<std::atomic<long long>>(0)) {
    meta_.validate();
  }

  const std::string& name() const { return name_; }
  const ProblemMeta& meta() const { return meta_; }
  int dim() const { return meta_.dim; }

  /// Evaluates f(x), counting the call.  Non-finite results surface as
  /// OracleError at the call site that consumed them (see sampling.hpp).
  double value(const Vec& x) const {
    calls_->fetch_add(1, std::memory_order_relaxed);
    return oracle_(x);
  }

  long long oracle_calls() const { return calls_->load(std::memory_order_relaxed); }
  void reset_oracle_calls() const { calls_->store(0, std::memory_order_relaxed); }

  bool has_exact_gradient() const { return static_cast<bool>(exact_gradient_); }
  Vec exact_gradient(const Vec& x) const { return exact_gradient_(x); }
  void set_exact_gradient(std::function<Vec(const Vec&)> g) { exact_gradient_ = std::move(g); }

  bool has_goldstein_1d() const { return static_cast<bool>(goldstein_1d_); }
  Interval goldstein_1d(double x, double delta) const { return goldstein_1d_(x, delta); }
  void set_goldstein_1d(std::function<Interval(double, double)> g) { goldstein_1d_ = std::move(g); }

  const Vec& default_start() const { return default_start_; }
  void set_default_start(Vec x0) { default_start_ = std::move(x0); }

  /// Points where the smoothing gap is designed to be large (tightness
  /// witnesses); empty for most problems.
  const std::vector<Vec>& witness_points() const { return witness_points_; }
  void add_witness_point(Vec x) { witness_points_.push_back(std::move(x)); }

 private:
  std::string name_;
  ProblemMeta meta_;
  std::function<double(const Vec&)> oracle_;
  std::function<Vec(const Vec&)> exact_gradient_;
  std::function<Interval(double, double)> goldstein_1d_;
  Vec default_start_;
  std::vector<Vec> witness_points_;
  std::shared_ptr<std::atomic<long long>> calls_;
};

/// Opaque randomness token for one noisy oracle evaluation.  The token
/// carries all of the draw's randomness: evaluating the same (x, token)
/// twice returns the same value.
struct SampleToken {
  std::uint64_t id = 0;
};

/// Noisy value oracle F(x, xi) with E_xi[F(x, xi)] = f(x).
class StochasticProblemSpec {
 public:
  StochasticProblemSpec() = default;
  StochasticProblemSpec(std::string name, ProblemMeta meta,
                        std::function<SampleToken(RngStream&)> draw,
                        std::function<double(const Vec&, SampleToken)> oracle)
      : name_(std::move(name)),
        meta_(meta),
        draw_(std::move(draw)),
        oracle_(std::move(oracle)),
        calls_(std::make_shared<std::atomic<long long>>(0)) {
    meta_.validate();
  }

  const std::string& name() const { return name_; }
  const ProblemMeta& meta() const { return meta_; }
  int dim() const { return meta_.dim; }

  SampleToken draw_sample(RngStream& rng) const { return draw_(rng); }

  double value(const Vec& x, SampleToken token) const {
    calls_->fetch_add(1, std::memory_order_relaxed);
    return oracle_(x, token);
  }

  long long oracle_calls() const { return calls_->load(std::memory_order_relaxed); }
  void reset_oracle_calls() const { calls_->store(0, std::memory_order_relaxed); }

  bool has_mean_oracle() const { return static_cast<bool>(mean_); }
  double mean_value(const Vec& x) const { return mean_(x); }
  void set_mean_oracle(std::function<double(const Vec&)> m) { mean_ = std::move(m); }

  /// Number of components for finite sums, 0 when the sample space is not
  /// finite.
  int component_count() const { return components_; }
  void set_component_count(int n) { components_ = n; }

  const Vec& default_start() const { return default_start_; }
  void set_default_start(Vec x0) { default_start_ = std::move(x0); }

 private:
  std::string name_;
  ProblemMeta meta_;
  std::function<SampleToken(RngStream&)> draw_;
  std::function<double(const Vec&, SampleToken)> oracle_;
  std::function<double(const Vec&)> mean_;
  int components_ = 0;
  Vec default_start_;
  std::shared_ptr<std::atomic<long long>> calls_;
};

/// Zero-variance stochastic view of a deterministic problem: every token
/// maps to the same value f(x).  SGFM on this wrapper reproduces GFM
/// bit for bit.
StochasticProblemSpec as_stochastic(const ProblemSpec& problem);

struct SpotCheckResult {
  double max_ratio = 0.0;
  bool violation = false;  // max_ratio exceeded the declared constant
  Vec worst_x;
  Vec worst_y;
};

/// Samples n_pairs random pairs in [-box_radius, box_radius]^d and reports
/// the largest observed |f(x)-f(y)| / ||x-y||.  A ratio above the declared
/// Lipschitz constant falsifies the metadata; it is reported, not thrown.
SpotCheckResult lipschitz_spot_check(const ProblemSpec& problem, long n_pairs, RngStream rng,
                                     double box_radius = 2.0);

}  // namespace gfopt
