// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "stablab/experiments.hpp"

using namespace stablab;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto start = Clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool pass = v.pass;
  if (budget_s > 0 && secs > budget_s) {
    pass = false;
    v.detail += " (over the " + std::to_string(int(budget_s)) + " s budget)";
  }
  if (!pass) ++failures;
  std::printf("criterion %d %-34s %s  %.2fs  %s\n", id, name, pass ? "PASS" : "FAIL", secs,
              v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

SacMember random_member(const StableParams& p, const QuadratureSpec& q, RandomStream& rng) {
  const SacMember pure = SacMember::pure_stable(p);
  const SacMember pareto = make_pareto_matched(p, q);
  const SacMember noise = SacMember::noise_convolved(p, rng.uniform(0.1, 3.0));
  switch (static_cast<int>(rng.uniform() * 4)) {
    case 0: return pure;
    case 1: return pareto;
    case 2: return noise;
    default: {
      const double w = rng.uniform(0.1, 0.9);
      return SacMember::mixture({{w, pareto}, {1.0 - w, noise}});
    }
  }
}

WeightPrefix random_prefix(std::size_t N, double alpha, RandomStream& rng) {
  switch (static_cast<int>(rng.uniform() * 4)) {
    case 0: return weights_prefix(WeightScheme::constant(), N, alpha);
    case 1: return weights_prefix(WeightScheme::polynomial(rng.uniform(0.0, 2.0)), N, alpha);
    case 2: return weights_prefix(WeightScheme::geometric(rng.uniform(1.01, 1.5)), N, alpha);
    default: {
      std::vector<double> a(N);
      for (double& v : a) v = rng.uniform(0.05, 2.0) * rng.sign();
      return make_prefix(std::move(a), alpha);
    }
  }
}

Verdict cauchy_oracle() {
  const StableParams p(1, 1);
  const auto q = QuadratureSpec::for_params(p);
  double worst = 0.0;
  for (double x : linear_grid(-10, 10, 201)) {
    const double exact = 0.5 + std::atan(x) / std::numbers::pi;
    worst = std::max(worst, std::abs(stable_cdf(p, x, q) - exact));
  }
  return {worst < 1e-8, fmt("max error %.3g on 201 points", worst)};
}

Verdict sampler_fidelity() {
  double worst = 0.0;
  std::uint64_t seed = 1000;
  for (double alpha : {0.7, 1.0, 1.5}) {
    for (double c : {0.5, 1.0}) {
      const StableParams p(alpha, c);
      const auto q = QuadratureSpec::for_params(p);
      RandomStream rng(++seed);
      std::vector<double> xs(100000);
      for (double& x : xs) x = stable_sample(p, rng);
      worst = std::max(worst, ks_distance(xs, [&](double x) { return stable_cdf(p, x, q); }));
    }
  }
  return {worst < 0.007, fmt("max KS %.5f over 6 (alpha, c)", worst)};
}

Verdict product_bound_suite() {
  RandomStream rng(31);
  int bad = 0;
  int refined_checks = 0;
  double worst_ratio = 0.0;
  const auto t_grid = linear_grid(-4, 4, 33);
  for (int k = 0; k < 200; ++k) {
    const StableParams p(rng.uniform(0.2, 1.95), rng.uniform(0.2, 3.0));
    const auto q = QuadratureSpec::for_params(p);
    const SacMember m1 = random_member(p, q, rng);
    const SacMember m2 = random_member(p, q, rng);
    const std::size_t N = 8 + static_cast<std::size_t>(rng.uniform() * 249);
    const WeightPrefix w = random_prefix(N, p.alpha(), rng);
    const RhoSpec spec = RhoSpec::for_params(p);
    const RhoResult rv = rho(m1, m2, spec, q);

    const double t = rng.uniform(-1.0, 1.0) / w.delta;
    const Lemma1Result r = lemma1_check(m1, m2, w, t, rv, spec, q);
    if (!r.pass) ++bad;
    if (r.rhs_refined > 0) worst_ratio = std::max(worst_ratio, r.lhs / r.rhs_refined);

    for (double s : t_grid) {
      const Lemma1Result g = lemma1_check(m1, m2, w, s, rv, spec, q, false);
      ++refined_checks;
      if (!g.pass) ++bad;
    }
  }
  return {bad == 0, fmt("%.0f violations; 200 rho checks, %.0f refined checks, max lhs/refined %.3f",
                        bad, refined_checks, worst_ratio)};
}

Verdict weighted_sum_convergence() {
  const StableParams p(1.2, 1);
  const auto q = QuadratureSpec::for_params(p);
  const MeasureModel model = MeasureModel::for_stable_limit(
      {{0.5, make_pareto_matched(p, q)}, {0.5, SacMember::noise_convolved(p, 0.5)}});
  const WeightScheme scheme = WeightScheme::polynomial(1.0);
  const std::vector<std::size_t> Ns{256, 1024, 4096};
  const auto grid = default_t_grid();
  const auto reports = converge_experiment(model, scheme, Ns, 50000, grid, 12345);

  // Exact (noise-free) deviation of the mixture product from the limit.
  std::vector<double> exact;
  for (std::size_t N : Ns) {
    const WeightPrefix w = weights_prefix(scheme, N, p.alpha());
    double dev = 0.0;
    for (double t : grid) {
      double mix = 0.0;
      for (const Atom& a : model.atoms()) mix += a.prob * weighted_product_cf(*a.measure.sac(), w, t, q);
      dev = std::max(dev, std::abs(mix - stable_cf(p, t)));
    }
    exact.push_back(dev);
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < reports.size(); ++i)
    decreasing = decreasing && reports[i].max_abs_dev < reports[i - 1].max_abs_dev;
  const double last = reports.back().max_abs_dev;
  const double se = *std::max_element(reports.back().mc_se.begin(), reports.back().mc_se.end());
  std::string detail = fmt("max_abs_dev %.5f, %.5f, %.5f", reports[0].max_abs_dev,
                           reports[1].max_abs_dev, last);
  detail += fmt("; exact %.2e, %.2e, %.2e", exact[0], exact[1], exact[2]);
  detail += fmt("; max mc_se %.4f; seed 12345", se);
  if (!decreasing) detail += "; not strictly decreasing";
  return {decreasing && last < 0.02, detail};
}

Verdict exact_stability() {
  const StableParams p(1.2, 1);
  const MeasureModel model = MeasureModel::for_stable_limit({{1.0, SacMember::pure_stable(p)}});
  const auto reports = converge_experiment(model, WeightScheme::constant(), {256, 1024, 4096}, 50000,
                                           default_t_grid(), 777);
  bool ok = true;
  std::string detail;
  for (const auto& r : reports) {
    const double se = *std::max_element(r.mc_se.begin(), r.mc_se.end());
    ok = ok && r.max_abs_dev <= 4.0 * se;
    detail += fmt("N=%.0f dev %.4f <= %.4f; ", double(r.N), r.max_abs_dev, 4.0 * se);
  }
  return {ok, detail};
}

Verdict rho_truncation() {
  RandomStream rng(606);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const StableParams p(rng.uniform(0.2, 1.95), rng.uniform(0.2, 3.0));
    const auto q = QuadratureSpec::for_params(p);
    const SacMember m1 = random_member(p, q, rng);
    const SacMember m2 = random_member(p, q, rng);
    RhoSpec spec = RhoSpec::for_params(p);
    spec.trunc_M = 5;
    double previous = rho(m1, m2, spec, q).value;
    for (int M = 5; M <= 20; ++M) {
      spec.trunc_M = M + 1;
      const double next = rho(m1, m2, spec, q).value;
      const double bound = 4.0 * (p.c() + 2.0) * std::ldexp(1.0, -M);
      worst = std::max(worst, std::abs(next - previous) / bound);
      if (std::abs(next - previous) > bound) ++bad;
      previous = next;
    }
  }
  return {bad == 0, fmt("%.0f violations over 800 steps; max |diff|/bound %.3g", bad, worst)};
}

Verdict uan_discrimination() {
  const std::vector<std::size_t> Ns{64, 256, 1024, 4096};
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 1.2, 1.8}) {
    ok = ok && uan_check(WeightScheme::constant(), alpha, Ns).pass;
    for (double g : {0.5, 1.0, 2.0}) ok = ok && uan_check(WeightScheme::polynomial(g), alpha, Ns).pass;
    for (double r : {1.5, 2.0}) {
      const UanReport rep = uan_check(WeightScheme::geometric(r), alpha, Ns);
      const double limit = std::pow(1.0 - std::pow(r, -alpha), 1.0 / alpha);
      const double err = std::abs(rep.delta.back() - limit);
      worst = std::max(worst, err);
      ok = ok && !rep.pass && err < 1e-6;
    }
  }
  return {ok, fmt("geometric delta error %.2g; alpha in {0.5, 1, 1.2, 1.8}", worst)};
}

Verdict mixed_normal_clt() {
  const MeasureModel model({{0.5, Measure::gaussian(1.0)}, {0.5, Measure::gaussian(4.0)}});
  const CltReport r = clt_experiment(model, 2048, 20000, 2048);
  return {r.ks < 0.02, fmt("KS %.5f", r.ks)};
}

Verdict de_finetti() {
  const StableParams p1(1.2, 1);
  const StableParams p2(0.6, 2);
  const auto q2 = QuadratureSpec::for_params(p2);
  const std::vector<MeasureModel> models{
      MeasureModel({{0.3, Measure::two_point(1.0)}, {0.3, Measure::uniform(2.0)}, {0.4, Measure::gaussian(0.5)}}),
      MeasureModel({{0.5, SacMember::pure_stable(p1)}, {0.5, SacMember::noise_convolved(p1, 0.5)}}),
      MeasureModel({{0.2, make_pareto_matched(p2, q2)},
                    {0.5, SacMember::noise_convolved(p2, 2.0)},
                    {0.3, Measure::gaussian(1.0)}}),
  };
  const std::size_t reps = 100000;
  const double tol = 4.0 / std::sqrt(double(reps));
  const auto grid = default_t_grid();
  double worst = 0.0;
  std::uint64_t seed = 90;
  for (const MeasureModel& m : models) {
    const auto first = block_sums(m, std::vector<double>{1.0, 0.0}, 1.0, reps, ++seed);
    const EcfResult e = ecf(first, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(e.values[i] - m.mixture_cf(grid[i])));
  }
  return {worst <= tol, fmt("max deviation %.5f, tolerance %.5f", worst, tol)};
}

}  // namespace

int main() {
  run(1, "cauchy oracle", 5, cauchy_oracle);
  run(2, "sampler fidelity", 30, sampler_fidelity);
  run(3, "product bound suite", 120, product_bound_suite);
  run(4, "weighted-sum convergence", 300, weighted_sum_convergence);
  run(5, "exact-stability control", 0, exact_stability);
  run(6, "rho truncation bound", 60, rho_truncation);
  run(7, "uan discrimination", 0, uan_discrimination);
  run(8, "mixed-normal clt", 60, mixed_normal_clt);
  run(9, "de finetti identity", 0, de_finetti);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
