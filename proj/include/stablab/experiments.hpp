#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stablab/measures.hpp"
#include "stablab/sac.hpp"
#include "stablab/weights.hpp"

namespace stablab {

struct Lemma1Result {
  double lhs = 0.0;          // |prod cf1(t a_k/A) - prod cf2(t a_k/A)|
  double rhs_rho = 0.0;      // |t|^alpha rho(m1, m2); NaN when not compared
  double rhs_refined = 0.0;  // |t|^alpha sup_{|x| <= |t| delta} |beta1 - beta2|
  double tolerance = 0.0;
  bool rho_compared = false;
  bool pass = false;
};

/// Checks the characteristic-function deviation bound for weighted sums of
/// i.i.d. draws from m1 versus m2 at a single t.
///
/// The refined bound is always evaluated. The rho bound needs |t| delta <= 1;
/// with `compare_rho` set and that condition violated a ValidationError is
/// thrown, without it the rho comparison is skipped.
Lemma1Result lemma1_check(const SacMember& m1, const SacMember& m2,
                          const WeightPrefix& prefix, double t,
                          const RhoSpec& spec, const QuadratureSpec& quad,
                          bool compare_rho = true);

/// Same, reusing a precomputed rho value.
Lemma1Result lemma1_check(const SacMember& m1, const SacMember& m2,
                          const WeightPrefix& prefix, double t,
                          const RhoResult& rho_value, const RhoSpec& spec,
                          const QuadratureSpec& quad, bool compare_rho = true);

/// Exact product prod_k cf(t a_k / A_N).
double weighted_product_cf(const SacMember& m, const WeightPrefix& prefix, double t,
                           const QuadratureSpec& quad);

/// normalizer^{-1} sum_k a_k Y_k over `reps` independent exchangeable blocks.
///
/// Replication r draws from the substream (seed, N, r), so the output is
/// identical for any number of `shards` (worker threads).
std::vector<double> block_sums(const MeasureModel& model, std::span<const double> a,
                               double normalizer, std::size_t reps,
                               std::uint64_t seed, unsigned shards = 1);

std::vector<double> block_sums(const MeasureModel& model, const WeightPrefix& prefix,
                               std::size_t reps, std::uint64_t seed,
                               unsigned shards = 1);

/// Stable-limit weighted sums; the model must pass stable_params().
std::vector<double> weighted_sum_samples(const MeasureModel& model,
                                         const WeightScheme& scheme, std::size_t N,
                                         std::size_t reps, std::uint64_t seed,
                                         unsigned shards = 1);

struct EcfResult {
  std::vector<double> values;
  std::vector<double> mc_se;
};

/// Cosine empirical characteristic function with Monte Carlo standard errors.
EcfResult ecf(std::span<const double> samples, std::span<const double> t_grid);

/// Uniform grid of `count` points on [start, stop].
std::vector<double> linear_grid(double start, double stop, std::size_t count);

/// 41 points on [-3, 3].
std::vector<double> default_t_grid();

struct ConvergenceReport {
  std::vector<double> t_grid;
  std::vector<double> ecf;
  std::vector<double> target;
  std::vector<double> abs_dev;
  std::vector<double> mc_se;
  double max_abs_dev = 0.0;
  std::size_t N = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  bool uan_pass = false;
  std::int64_t runtime_ms = 0;
};

/// One report per N: ecf of the normalized weighted sums against
/// exp(-c|t|^alpha). The uan verdict on N_list is recorded, not enforced.
std::vector<ConvergenceReport> converge_experiment(const MeasureModel& model,
                                                   const WeightScheme& scheme,
                                                   const std::vector<std::size_t>& N_list,
                                                   std::size_t reps,
                                                   const std::vector<double>& t_grid,
                                                   std::uint64_t seed,
                                                   unsigned shards = 1);

struct CltReport {
  std::size_t N = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double ks = 0.0;
  std::vector<double> probs;
  std::vector<double> variances;
  std::int64_t runtime_ms = 0;
};

/// Mixed-normal CDF sum_i p_i Phi(x / sqrt(v_i)).
double mixture_normal_cdf(std::span<const double> probs,
                          std::span<const double> variances, double x);

/// N^{-1/2} sum Y_k per block against the mixed-normal limit. Every atom must
/// have a finite second moment.
CltReport clt_experiment(const MeasureModel& model, std::size_t N, std::size_t reps,
                         std::uint64_t seed, unsigned shards = 1);

/// sup_i max(|i/n - F(x_(i))|, |F(x_(i)) - (i-1)/n|).
double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf);

}  // namespace stablab
