#include "stablab/sac.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "stablab/error.hpp"
#include "stablab/format.hpp"
#include "stablab/quadrature.hpp"

namespace stablab {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 4.0;
constexpr double kAsymptoticLimit = 40.0;

// e^{-x} - 1 + x without cancellation for small x.
double exp_remainder(double x) {
  if (x < 1e-2) {
    double term = x * x / 2.0;
    double sum = 0.0;
    for (int k = 3; k < 12; ++k) {
      sum += term;
      term *= -x / k;
    }
    return sum;
  }
  return std::expm1(-x) + x;
}

// sin(y)/y - 1.
double sinc_minus_one(double y) {
  if (std::abs(y) < 1e-2) {
    const double y2 = y * y;
    return -y2 / 6.0 + y2 * y2 / 120.0 - y2 * y2 * y2 / 5040.0;
  }
  return std::sin(y) / y - 1.0;
}

// \int_0^L (1 - cos u) u^{-alpha-1} du by its power series (L <= kSeriesLimit).
double head_series(double alpha, double L) {
  if (L == 0.0) return 0.0;
  const double L2 = L * L;
  const double scale = std::pow(L, -alpha);
  double power = 1.0;  // L^{2k} / (2k)!
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    power *= L2 / ((2.0 * k - 1.0) * (2.0 * k));
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * power / (2.0 * k - alpha);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum * scale;
}

// \int_L^inf cos(u) u^{-alpha-1} du by the asymptotic expansion
//   \int_L^inf e^{iu} u^{-v} du = i e^{iL} L^{-v} sum_k (-i)^k (v)_k L^{-k}.
double cosine_tail(double alpha, double L) {
  const double v = alpha + 1.0;
  std::complex<double> term(1.0, 0.0);
  std::complex<double> sum(0.0, 0.0);
  double previous = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const double mag = std::abs(term);
    if (mag > previous || mag < 1e-19) break;
    sum += term;
    previous = mag;
    term *= std::complex<double>(0.0, -1.0) * ((v + k) / L);
  }
  const std::complex<double> value =
      std::complex<double>(0.0, 1.0) * std::polar(std::pow(L, -v), L) * sum;
  return value.real();
}

// \int_L^inf (1 - cos u) u^{-alpha-1} du for L >= kAsymptoticLimit.
double far_tail(double alpha, double L) {
  return std::pow(L, -alpha) / alpha - cosine_tail(alpha, L);
}

// \int_a^b 2 sin^2(u/2) u^{-alpha-1} du by adaptive quadrature, a > 0.
double middle_integral(double alpha, double a, double b,
                       const QuadratureSpec& quad) {
  if (b <= a) return 0.0;
  auto integrand = [alpha](double u) {
    const double h = std::sin(0.5 * u);
    return 2.0 * h * h * std::pow(u, -alpha - 1.0);
  };
  std::vector<double> cuts{a};
  for (double x = kPi * std::ceil(a / kPi); x < b; x += kPi) {
    if (x > a) cuts.push_back(x);
  }
  cuts.push_back(b);
  const QuadratureResult r =
      integrate_adaptive(integrand, cuts, 0.01 * quad.abs_tol, quad.node_count);
  if (!r.converged) {
    throw QuadratureError("Pareto member: quadrature did not converge on [" +
                          format_number(a) + ", " + format_number(b) + "]");
  }
  return r.value;
}

// \int_0^L (1 - cos u) u^{-alpha-1} du for L <= kAsymptoticLimit.
double head_integral(double alpha, const ParetoMatched& p, double L,
                     const QuadratureSpec& quad) {
  if (L <= kSeriesLimit) return head_series(alpha, L);
  return p.head_integral + middle_integral(alpha, kSeriesLimit, L, quad);
}

double pareto_beta(const StableParams& params, const ParetoMatched& p,
                   double t, const QuadratureSpec& quad) {
  const double alpha = params.alpha();
  const double L = std::abs(t) * p.scale;
  if (L == 0.0) return 0.0;
  const double weight = alpha * std::pow(p.scale, alpha);
  if (L <= kAsymptoticLimit) return weight * head_integral(alpha, p, L, quad);
  return params.c() - std::pow(std::abs(t), -alpha) +
         weight * cosine_tail(alpha, L);
}

double pareto_cf(const StableParams& params, const ParetoMatched& p, double t,
                 const QuadratureSpec& quad) {
  const double alpha = params.alpha();
  const double L = std::abs(t) * p.scale;
  if (L == 0.0) return 1.0;
  const double La = std::pow(L, alpha);
  if (L <= kAsymptoticLimit) {
    return 1.0 - alpha * La * (p.full_integral - head_integral(alpha, p, L, quad));
  }
  return alpha * La * cosine_tail(alpha, L);
}

double pure_beta(const StableParams& params, double t) {
  const double ta = std::pow(std::abs(t), params.alpha());
  if (ta == 0.0) return 0.0;
  return exp_remainder(params.c() * ta) / ta;
}

double noise_cf(const StableParams& params, double eps, double t) {
  const double y = eps * t;
  const double sinc = (y == 0.0) ? 1.0 : std::sin(y) / y;
  return stable_cf(params, t) * sinc;
}

double noise_beta(const StableParams& params, double eps, double t) {
  const double ta = std::pow(std::abs(t), params.alpha());
  if (ta == 0.0) return 0.0;
  const double x = params.c() * ta;
  // e^{-x} sinc - 1 + x = (e^{-x} - 1 + x) + e^{-x} (sinc - 1)
  return (exp_remainder(x) + std::exp(-x) * sinc_minus_one(eps * t)) / ta;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

SacMember SacMember::pure_stable(const StableParams& params) {
  return SacMember(params, PureStable{});
}

SacMember SacMember::noise_convolved(const StableParams& params,
                                     double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw ValidationError("noise amplitude eps must be positive (got " +
                          format_number(amplitude) + ")");
  }
  return SacMember(params, NoiseConvolved{amplitude});
}

SacMember SacMember::mixture(std::vector<std::pair<double, SacMember>> parts) {
  if (parts.empty()) throw ValidationError("mixture needs at least one component");
  Mixture mix;
  double total = 0.0;
  const StableParams params = parts.front().second.params();
  for (auto& [w, member] : parts) {
    if (!(w > 0.0)) {
      throw ValidationError("mixture weight must be positive (got " +
                            format_number(w) + ")");
    }
    if (member.params() != params) {
      throw ValidationError("mixture components must share alpha and c");
    }
    total += w;
    mix.weights.push_back(w);
    mix.components.push_back(std::move(member));
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("mixture weights must sum to 1 (got " +
                          format_number(total) + ")");
  }
  return SacMember(params, std::move(mix));
}

double SacMember::cf(double t, const QuadratureSpec& quad) const {
  return std::visit(
      Overloaded{
          [&](const PureStable&) { return stable_cf(params_, t); },
          [&](const ParetoMatched& p) { return pareto_cf(params_, p, t, quad); },
          [&](const NoiseConvolved& n) { return noise_cf(params_, n.amplitude, t); },
          [&](const Mixture& m) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              sum += m.weights[i] * m.components[i].cf(t, quad);
            }
            return sum;
          }},
      kind_);
}

double SacMember::beta(double t, const QuadratureSpec& quad) const {
  if (t == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const PureStable&) { return pure_beta(params_, t); },
          [&](const ParetoMatched& p) { return pareto_beta(params_, p, t, quad); },
          [&](const NoiseConvolved& n) { return noise_beta(params_, n.amplitude, t); },
          [&](const Mixture& m) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              sum += m.weights[i] * m.components[i].beta(t, quad);
            }
            return sum;
          }},
      kind_);
}

double SacMember::sample(RandomStream& rng) const {
  return std::visit(
      Overloaded{
          [&](const PureStable&) { return stable_sample(params_, rng); },
          [&](const ParetoMatched& p) {
            const double u = rng.uniform();
            const double magnitude = p.scale * std::pow(u, -1.0 / params_.alpha());
            return rng.sign() * magnitude;
          },
          [&](const NoiseConvolved& n) {
            const double x = stable_sample(params_, rng);
            return x + n.amplitude * rng.uniform_symmetric();
          },
          [&](const Mixture& m) {
            const double u = rng.uniform();
            double cumulative = 0.0;
            std::size_t pick = m.weights.size() - 1;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              cumulative += m.weights[i];
              if (u < cumulative) {
                pick = i;
                break;
              }
            }
            return m.components[pick].sample(rng);
          }},
      kind_);
}

bool SacMember::uses_quadrature() const {
  if (std::holds_alternative<ParetoMatched>(kind_)) return true;
  if (const auto* m = std::get_if<Mixture>(&kind_)) {
    return std::any_of(m->components.begin(), m->components.end(),
                       [](const SacMember& s) { return s.uses_quadrature(); });
  }
  return false;
}

std::string SacMember::describe() const {
  const std::string ac = "alpha=" + format_number(params_.alpha()) +
                         ",c=" + format_number(params_.c());
  return std::visit(
      Overloaded{
          [&](const PureStable&) { return "stable:" + ac; },
          [&](const ParetoMatched&) { return "pareto:" + ac; },
          [&](const NoiseConvolved& n) {
            return "noise:" + ac + ",eps=" + format_number(n.amplitude);
          },
          [&](const Mixture& m) {
            std::string out = "mix:";
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              if (i) out += '|';
              out += "(" + format_number(m.weights[i]) + ")" +
                     m.components[i].describe();
            }
            return out;
          }},
      kind_);
}

double tail_constant(double alpha, const QuadratureSpec& quad) {
  const double full = head_series(alpha, kSeriesLimit) +
                      middle_integral(alpha, kSeriesLimit, kAsymptoticLimit, quad) +
                      far_tail(alpha, kAsymptoticLimit);
  return alpha * full;
}

SacMember make_pareto_matched(const StableParams& params,
                              const QuadratureSpec& quad) {
  const double alpha = params.alpha();
  ParetoMatched p;
  p.head_integral = head_series(alpha, kSeriesLimit);
  p.full_integral = p.head_integral +
                    middle_integral(alpha, kSeriesLimit, kAsymptoticLimit, quad) +
                    far_tail(alpha, kAsymptoticLimit);
  const double K = alpha * p.full_integral;
  if (!(K > 0.0) || !std::isfinite(K)) {
    throw NumericalError("Pareto member: tail constant K(alpha) is not positive; "
                         "check the quadrature settings");
  }
  p.scale = std::pow(params.c() / K, 1.0 / alpha);
  if (!(p.scale > 0.0) || !std::isfinite(p.scale)) {
    throw NumericalError("Pareto member: no finite scale solves s^alpha K = c");
  }
  return SacMember(params, p);
}

double member_cf(const SacMember& m, double t, const QuadratureSpec& quad) {
  return m.cf(t, quad);
}

double member_beta(const SacMember& m, double t, const QuadratureSpec& quad) {
  return m.beta(t, quad);
}

double member_sample(const SacMember& m, RandomStream& rng) {
  return m.sample(rng);
}

RhoSpec RhoSpec::for_params(const StableParams& params) {
  RhoSpec spec;
  spec.trunc_M =
      static_cast<int>(std::ceil(std::log2(4.0 * (params.c() + 2.0) / 1e-6)));
  spec.grid_per_band = 64;
  return spec;
}

void RhoSpec::validate() const {
  if (trunc_M < 1) throw ValidationError("trunc_M must be at least 1");
  if (grid_per_band < 16) throw ValidationError("grid_per_band must be at least 16");
}

double beta_gap_sup(const SacMember& m1, const SacMember& m2, double lo,
                    double hi, int nodes, const QuadratureSpec& quad,
                    std::span<const double> extra_points) {
  auto gap = [&](double t) {
    return std::abs(m1.beta(t, quad) - m2.beta(t, quad));
  };
  if (hi <= lo) return gap(lo);

  const double h = (hi - lo) / (nodes - 1);
  double best = -1.0;
  int best_index = 0;
  for (int i = 0; i < nodes; ++i) {
    const double t = (i == nodes - 1) ? hi : lo + h * i;
    const double g = gap(t);
    if (g > best) {
      best = g;
      best_index = i;
    }
  }
  for (double t : extra_points) {
    if (t >= lo && t <= hi) best = std::max(best, gap(t));
  }

  const double a = std::max(lo, lo + h * (best_index - 1));
  const double b = std::min(hi, lo + h * (best_index + 1));
  if (b > a) {
    std::uintmax_t iterations = 60;
    const auto polished = boost::math::tools::brent_find_minima(
        [&](double t) { return -gap(t); }, a, b, 40, iterations);
    best = std::max(best, -polished.second);
  }
  return best;
}

RhoResult rho(const SacMember& m1, const SacMember& m2, const RhoSpec& spec,
              const QuadratureSpec& quad) {
  spec.validate();
  if (m1.params() != m2.params()) {
    throw ValidationError("rho: members belong to different classes S(alpha, c)");
  }
  RhoResult out;
  out.value = beta_gap_sup(m1, m2, 0.0, 1.0, spec.grid_per_band, quad);
  for (int k = 0; k < spec.trunc_M; ++k) {
    const double lo = std::ldexp(1.0, k);
    out.value += std::ldexp(1.0, -k) *
                 beta_gap_sup(m1, m2, lo, 2.0 * lo, spec.grid_per_band, quad);
  }
  out.trunc_bound = 4.0 * (m1.params().c() + 2.0) * std::ldexp(1.0, -spec.trunc_M);
  return out;
}

}  // namespace stablab
