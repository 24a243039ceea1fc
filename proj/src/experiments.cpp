#include "stablab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "stablab/error.hpp"
#include "stablab/format.hpp"

namespace stablab {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

// Runs body(r) for r in [0, count) on up to `shards` threads, contiguous chunks.
template <class Body>
void for_each_replication(std::size_t count, unsigned shards, Body body) {
  const std::size_t workers = std::clamp<std::size_t>(shards, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([=, &body] {
      for (std::size_t r = begin; r < end; ++r) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

double weighted_product_cf(const SacMember& m, const WeightPrefix& prefix, double t,
                           const QuadratureSpec& quad) {
  double product = 1.0;
  for (double a : prefix.a) product *= m.cf(t * a / prefix.A, quad);
  return product;
}

Lemma1Result lemma1_check(const SacMember& m1, const SacMember& m2,
                          const WeightPrefix& prefix, double t,
                          const RhoResult& rho_value, const RhoSpec& spec,
                          const QuadratureSpec& quad, bool compare_rho) {
  if (m1.params() != m2.params()) {
    throw ValidationError("lemma1: members belong to different classes S(alpha, c)");
  }
  const double reach = std::abs(t) * prefix.delta;
  const bool rho_applicable = reach <= 1.0 + 1e-12;
  if (compare_rho && !rho_applicable) {
    throw ValidationError("lemma1: rho bound requires |t| delta_N <= 1 (got " +
                          format_number(reach) + ")");
  }

  Lemma1Result out;
  out.lhs = std::abs(weighted_product_cf(m1, prefix, t, quad) -
                     weighted_product_cf(m2, prefix, t, quad));

  std::vector<double> points;
  points.reserve(prefix.a.size());
  for (double a : prefix.a) points.push_back(std::abs(t * a) / prefix.A);
  const double t_alpha = std::pow(std::abs(t), m1.params().alpha());
  out.rhs_refined = t_alpha * beta_gap_sup(m1, m2, 0.0, reach, spec.grid_per_band,
                                           quad, points);

  out.tolerance = 1e-6;
  if (m1.uses_quadrature() || m2.uses_quadrature()) {
    out.tolerance += static_cast<double>(prefix.a.size()) * quad.abs_tol;
  }
  out.pass = out.lhs <= out.rhs_refined + out.tolerance;
  out.rho_compared = compare_rho;
  if (compare_rho) {
    out.rhs_rho = t_alpha * rho_value.value;
    out.pass = out.pass && out.lhs <= out.rhs_rho + out.tolerance;
  } else {
    out.rhs_rho = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Lemma1Result lemma1_check(const SacMember& m1, const SacMember& m2,
                          const WeightPrefix& prefix, double t, const RhoSpec& spec,
                          const QuadratureSpec& quad, bool compare_rho) {
  RhoResult r;
  if (compare_rho) {
    if (std::abs(t) * prefix.delta > 1.0 + 1e-12) {
      throw ValidationError("lemma1: rho bound requires |t| delta_N <= 1 (got " +
                            format_number(std::abs(t) * prefix.delta) + ")");
    }
    r = rho(m1, m2, spec, quad);
  }
  return lemma1_check(m1, m2, prefix, t, r, spec, quad, compare_rho);
}

std::vector<double> block_sums(const MeasureModel& model, std::span<const double> a,
                               double normalizer, std::size_t reps,
                               std::uint64_t seed, unsigned shards) {
  if (reps < 1) throw ValidationError("reps must be at least 1");
  if (a.empty()) throw ValidationError("block length N must be at least 1");
  if (!(normalizer > 0.0)) throw ValidationError("normalizer must be positive");
  const std::size_t N = a.size();
  std::vector<double> sums(reps);
  for_each_replication(reps, shards, [&](std::size_t r) {
    RandomStream rng = RandomStream::substream(seed, N, r);
    const Measure& mu = draw_measure(model, rng);
    double s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += a[k] * mu.sample(rng);
    sums[r] = s / normalizer;
  });
  return sums;
}

std::vector<double> block_sums(const MeasureModel& model, const WeightPrefix& prefix,
                               std::size_t reps, std::uint64_t seed, unsigned shards) {
  return block_sums(model, prefix.a, prefix.A, reps, seed, shards);
}

std::vector<double> weighted_sum_samples(const MeasureModel& model,
                                         const WeightScheme& scheme, std::size_t N,
                                         std::size_t reps, std::uint64_t seed,
                                         unsigned shards) {
  const StableParams params = model.stable_params();
  const WeightPrefix prefix = weights_prefix(scheme, N, params.alpha());
  return block_sums(model, prefix, reps, seed, shards);
}

EcfResult ecf(std::span<const double> samples, std::span<const double> t_grid) {
  if (samples.empty()) throw ValidationError("ecf: samples must be nonempty");
  const double n = static_cast<double>(samples.size());
  EcfResult out;
  out.values.reserve(t_grid.size());
  out.mc_se.reserve(t_grid.size());
  for (double t : t_grid) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double s : samples) {
      const double v = std::cos(t * s);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    double se = 0.0;
    if (samples.size() > 1) {
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
      se = std::sqrt(var / n);
    }
    out.values.push_back(mean);
    out.mc_se.push_back(se);
  }
  return out;
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
  if (count < 2) throw ValidationError("grid count must be at least 2");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ValidationError("grid endpoints must be finite");
  }
  std::vector<double> g(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = start + step * static_cast<double>(i);
  g.back() = stop;
  return g;
}

std::vector<double> default_t_grid() { return linear_grid(-3.0, 3.0, 41); }

std::vector<ConvergenceReport> converge_experiment(const MeasureModel& model,
                                                   const WeightScheme& scheme,
                                                   const std::vector<std::size_t>& N_list,
                                                   std::size_t reps,
                                                   const std::vector<double>& t_grid,
                                                   std::uint64_t seed, unsigned shards) {
  const StableParams params = model.stable_params();
  if (t_grid.empty()) throw ValidationError("t grid must be nonempty");
  const UanReport uan = uan_check(scheme, params.alpha(), N_list);

  std::vector<ConvergenceReport> reports;
  for (std::size_t N : N_list) {
    const auto start = Clock::now();
    const WeightPrefix prefix = weights_prefix(scheme, N, params.alpha());
    const std::vector<double> sums = block_sums(model, prefix, reps, seed, shards);
    EcfResult e = ecf(sums, t_grid);

    ConvergenceReport rep;
    rep.t_grid = t_grid;
    rep.ecf = std::move(e.values);
    rep.mc_se = std::move(e.mc_se);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      rep.target.push_back(stable_cf(params, t_grid[i]));
      rep.abs_dev.push_back(std::abs(rep.ecf[i] - rep.target[i]));
      rep.max_abs_dev = std::max(rep.max_abs_dev, rep.abs_dev[i]);
    }
    rep.N = N;
    rep.reps = reps;
    rep.seed = seed;
    rep.uan_pass = uan.pass;
    rep.runtime_ms = elapsed_ms(start);
    reports.push_back(std::move(rep));
  }
  return reports;
}

double mixture_normal_cdf(std::span<const double> probs,
                          std::span<const double> variances, double x) {
  double F = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    F += probs[i] * normal_cdf(x / std::sqrt(variances[i]));
  }
  return F;
}

CltReport clt_experiment(const MeasureModel& model, std::size_t N, std::size_t reps,
                         std::uint64_t seed, unsigned shards) {
  const auto start = Clock::now();
  CltReport out;
  for (std::size_t i = 0; i < model.atoms().size(); ++i) {
    const Atom& atom = model.atoms()[i];
    const double m2 = second_moment(atom.measure);
    if (!std::isfinite(m2)) {
      throw ValidationError(
          "clt: atom " + std::to_string(i) + " (" + atom.measure.describe() +
          ") violates the second-moment condition: \\int x^2 dmu(x) must be finite");
    }
    out.probs.push_back(atom.prob);
    out.variances.push_back(atom.measure.variance());
  }
  if (N < 1) throw ValidationError("clt: N must be at least 1");
  const std::vector<double> ones(N, 1.0);
  const std::vector<double> sums =
      block_sums(model, ones, std::sqrt(static_cast<double>(N)), reps, seed, shards);
  out.ks = ks_distance(sums, [&](double x) {
    return mixture_normal_cdf(out.probs, out.variances, x);
  });
  out.N = N;
  out.reps = reps;
  out.seed = seed;
  out.runtime_ms = elapsed_ms(start);
  return out;
}

double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ValidationError("ks_distance: samples must be nonempty");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / n;
    const double lower = static_cast<double>(i) / n;
    d = std::max({d, std::abs(upper - F), std::abs(F - lower)});
  }
  return d;
}

}  // namespace stablab
