#include "gfopt/sampling.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace gfopt {
namespace {

constexpr long kChunk = 1024;

std::string point_to_string(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

void require_finite_pair(double plus, double minus, const Vec& x) {
  if (!std::isfinite(plus) || !std::isfinite(minus)) {
    throw OracleError("value oracle returned a non-finite number near x = " + point_to_string(x) +
                      ": f+ = " + std::to_string(plus) + ", f- = " + std::to_string(minus));
  }
}

// Accumulator for one chunk: coordinate sums, coordinate sums of squares,
// and the scalar ||g||^2 moments.
struct ChunkSums {
  Vec sum;
  Vec sum_sq;
  double nrm_sq = 0.0;
  double nrm_sq_sq = 0.0;

  explicit ChunkSums(int dim) : sum(dim, 0.0), sum_sq(dim, 0.0) {}

  void add(const Vec& g) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sum[i] += g[i];
      sum_sq[i] += g[i] * g[i];
      n2 += g[i] * g[i];
    }
    nrm_sq += n2;
    nrm_sq_sq += n2 * n2;
  }
};

ChunkSums run_chunk(int dim, long begin, long end, const RngStream& base,
                    const std::function<Vec(RngStream&)>& make) {
  ChunkSums acc(dim);
  for (long k = begin; k < end; ++k) {
    RngStream rng = base.substream(static_cast<std::uint64_t>(k));
    acc.add(make(rng));
  }
  return acc;
}

}  // namespace

namespace detail {

void fill_unit_sphere(Vec& w, RngStream& rng) {
  const int dim = static_cast<int>(w.size());
  double nrm = 0.0;
  do {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      w[i] = rng.next_gaussian();
      s += w[i] * w[i];
    }
    nrm = std::sqrt(s);
  } while (nrm < 1e-12);
  for (int i = 0; i < dim; ++i) w[i] /= nrm;
}

double two_point_coefficient(const ProblemSpec& problem, const Vec& x,
                             const SmoothingParams& params, RngStream& rng, Vec& w, Vec& probe) {
  const int d = problem.dim();
  fill_unit_sphere(w, rng);
  for (int i = 0; i < d; ++i) probe[i] = x[i] + params.delta * w[i];
  const double plus = problem.value(probe);
  for (int i = 0; i < d; ++i) probe[i] = x[i] - params.delta * w[i];
  const double minus = problem.value(probe);
  require_finite_pair(plus, minus, x);
  return static_cast<double>(d) / (2.0 * params.delta) * (plus - minus);
}

double two_point_coefficient_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                        const SmoothingParams& params, RngStream& rng, Vec& w,
                                        Vec& probe) {
  const int d = problem.dim();
  const SampleToken xi = problem.draw_sample(rng);
  fill_unit_sphere(w, rng);
  for (int i = 0; i < d; ++i) probe[i] = x[i] + params.delta * w[i];
  const double plus = problem.value(probe, xi);
  for (int i = 0; i < d; ++i) probe[i] = x[i] - params.delta * w[i];
  const double minus = problem.value(probe, xi);
  require_finite_pair(plus, minus, x);
  return static_cast<double>(d) / (2.0 * params.delta) * (plus - minus);
}

}  // namespace detail

Vec sample_unit_sphere(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("sample_unit_sphere: dim must be >= 1");
  Vec w(dim);
  detail::fill_unit_sphere(w, rng);
  return w;
}

Vec sample_unit_ball(int dim, RngStream& rng) {
  Vec u = sample_unit_sphere(dim, rng);
  const double r = std::pow(rng.next_double(), 1.0 / static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) u[i] *= r;
  return u;
}

namespace {

GradientEstimate finish_estimate(int dim, double delta, Vec w, double plus, double minus,
                                 const Vec& x) {
  require_finite_pair(plus, minus, x);
  GradientEstimate e;
  const double coeff = static_cast<double>(dim) / (2.0 * delta) * (plus - minus);
  e.estimate = scaled(w, coeff);
  e.direction = std::move(w);
  e.value_plus = plus;
  e.value_minus = minus;
  return e;
}

}  // namespace

GradientEstimate two_point_estimate(const ProblemSpec& problem, const Vec& x,
                                    const SmoothingParams& params, RngStream& rng) {
  params.validate();
  const int d = problem.dim();
  Vec w = sample_unit_sphere(d, rng);
  Vec probe(x);
  for (int i = 0; i < d; ++i) probe[i] = x[i] + params.delta * w[i];
  const double plus = problem.value(probe);
  for (int i = 0; i < d; ++i) probe[i] = x[i] - params.delta * w[i];
  const double minus = problem.value(probe);
  return finish_estimate(d, params.delta, std::move(w), plus, minus, x);
}

GradientEstimate two_point_estimate_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                               const SmoothingParams& params, RngStream& rng) {
  params.validate();
  const int d = problem.dim();
  const SampleToken xi = problem.draw_sample(rng);
  Vec w = sample_unit_sphere(d, rng);
  Vec probe(x);
  for (int i = 0; i < d; ++i) probe[i] = x[i] + params.delta * w[i];
  const double plus = problem.value(probe, xi);
  for (int i = 0; i < d; ++i) probe[i] = x[i] - params.delta * w[i];
  const double minus = problem.value(probe, xi);
  return finish_estimate(d, params.delta, std::move(w), plus, minus, x);
}

GradientBatch batch_estimate(int dim, long n_samples, const RngStream& rng,
                             const std::function<Vec(RngStream&)>& make, Exec exec) {
  if (n_samples < 1) throw std::invalid_argument("batch_estimate: n_samples must be >= 1");
  const long n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partials(static_cast<std::size_t>(n_chunks), ChunkSums(dim));

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < n_chunks; ++c) {
      const long begin = c * kChunk;
      const long end = std::min(n_samples, begin + kChunk);
      partials[static_cast<std::size_t>(c)] = run_chunk(dim, begin, end, rng, make);
    }
  } else {
    for (long c = 0; c < n_chunks; ++c) {
      const long begin = c * kChunk;
      const long end = std::min(n_samples, begin + kChunk);
      partials[static_cast<std::size_t>(c)] = run_chunk(dim, begin, end, rng, make);
    }
  }

  // Fold partials in chunk order; this order is what makes serial and
  // parallel results identical.
  ChunkSums total(dim);
  for (const ChunkSums& p : partials) {
    for (int i = 0; i < dim; ++i) {
      total.sum[i] += p.sum[i];
      total.sum_sq[i] += p.sum_sq[i];
    }
    total.nrm_sq += p.nrm_sq;
    total.nrm_sq_sq += p.nrm_sq_sq;
  }

  GradientBatch out;
  out.n_samples = n_samples;
  out.mean.resize(dim);
  out.std_error.resize(dim);
  const double n = static_cast<double>(n_samples);
  for (int i = 0; i < dim; ++i) {
    out.mean[i] = total.sum[i] / n;
    const double var = std::max(0.0, total.sum_sq[i] / n - out.mean[i] * out.mean[i]);
    out.std_error[i] = (n_samples > 1) ? std::sqrt(var / (n - 1.0)) : 0.0;
  }
  out.mean_norm_sq = total.nrm_sq / n;
  const double var_n2 = std::max(0.0, total.nrm_sq_sq / n - out.mean_norm_sq * out.mean_norm_sq);
  out.mean_norm_sq_std_error = (n_samples > 1) ? std::sqrt(var_n2 / (n - 1.0)) : 0.0;
  return out;
}

ValueEstimate smoothed_value(const ProblemSpec& problem, const Vec& x,
                             const SmoothingParams& params, long n_samples, const RngStream& rng,
                             Exec exec) {
  params.validate();
  if (n_samples < 2) throw std::invalid_argument("smoothed_value: n_samples must be >= 2");
  const int d = problem.dim();
  // Reuse the gradient kernel with a 1-D "estimate": the sampled value.
  GradientBatch b = batch_estimate(
      1, n_samples, rng,
      [&](RngStream& r) -> Vec {
        Vec u = sample_unit_ball(d, r);
        Vec point(x);
        for (int i = 0; i < d; ++i) point[i] += params.delta * u[i];
        const double v = problem.value(point);
        if (!std::isfinite(v)) {
          throw OracleError("value oracle returned a non-finite number at x = " +
                            point_to_string(point));
        }
        return Vec{v};
      },
      exec);
  return ValueEstimate{b.mean[0], b.std_error[0], n_samples};
}

GradientBatch smoothed_gradient(const ProblemSpec& problem, const Vec& x,
                                const SmoothingParams& params, long n_samples,
                                const RngStream& rng, Exec exec) {
  params.validate();
  if (n_samples < 1) throw std::invalid_argument("smoothed_gradient: n_samples must be >= 1");
  return batch_estimate(
      problem.dim(), n_samples, rng,
      [&](RngStream& r) { return two_point_estimate(problem, x, params, r).estimate; }, exec);
}

GradientBatch smoothed_gradient_stochastic(const StochasticProblemSpec& problem, const Vec& x,
                                           const SmoothingParams& params, long n_samples,
                                           const RngStream& rng, Exec exec) {
  params.validate();
  if (n_samples < 1)
    throw std::invalid_argument("smoothed_gradient_stochastic: n_samples must be >= 1");
  return batch_estimate(
      problem.dim(), n_samples, rng,
      [&](RngStream& r) { return two_point_estimate_stochastic(problem, x, params, r).estimate; },
      exec);
}

}  // namespace gfopt
