#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stablab/random.hpp"
#include "stablab/stable.hpp"

namespace stablab {

class SacMember;

struct PureStable {};

/// Symmetric Pareto-type law with P(|X| > x) = (scale / x)^alpha, x >= scale.
struct ParetoMatched {
  double scale = 0.0;
  // \int_0^inf (1 - cos u) u^{-alpha-1} du, cached at construction.
  double full_integral = 0.0;
  // Same integrand over [0, kSeriesLimit].
  double head_integral = 0.0;
};

/// G_{alpha,c} convolved with Uniform(-amplitude, amplitude).
struct NoiseConvolved {
  double amplitude = 0.0;
};

struct Mixture {
  std::vector<double> weights;
  std::vector<SacMember> components;
};

/// A concrete member of S(alpha, c): a symmetric law whose characteristic
/// function is phi(t) = 1 - c|t|^alpha + beta(t)|t|^alpha with beta bounded,
/// continuous and beta(0) = 0. Immutable after construction.
class SacMember {
 public:
  using Kind = std::variant<PureStable, ParetoMatched, NoiseConvolved, Mixture>;

  static SacMember pure_stable(const StableParams& params);
  static SacMember noise_convolved(const StableParams& params, double amplitude);
  /// Components must share (alpha, c); weights positive, summing to 1 within 1e-9.
  static SacMember mixture(std::vector<std::pair<double, SacMember>> parts);

  const StableParams& params() const { return params_; }
  const Kind& kind() const { return kind_; }

  double cf(double t, const QuadratureSpec& quad) const;
  double beta(double t, const QuadratureSpec& quad) const;
  double sample(RandomStream& rng) const;

  /// True when evaluation goes through numerical quadrature.
  bool uses_quadrature() const;

  /// The member in the spec mini-language (`stable:alpha=..,c=..` etc.).
  std::string describe() const;

 private:
  SacMember(StableParams params, Kind kind)
      : params_(params), kind_(std::move(kind)) {}

  friend SacMember make_pareto_matched(const StableParams&,
                                       const QuadratureSpec&);

  StableParams params_;
  Kind kind_;
};

/// K(alpha) = alpha \int_0^inf (1 - cos u) u^{-alpha-1} du by quadrature.
double tail_constant(double alpha, const QuadratureSpec& quad);

/// Pareto-type member whose tail scale s solves s^alpha K(alpha) = c, so that
/// its characteristic function is 1 - c|t|^alpha + o(|t|^alpha).
SacMember make_pareto_matched(const StableParams& params,
                              const QuadratureSpec& quad);

double member_cf(const SacMember& m, double t, const QuadratureSpec& quad);
double member_beta(const SacMember& m, double t, const QuadratureSpec& quad);
double member_sample(const SacMember& m, RandomStream& rng);

struct RhoSpec {
  int trunc_M = 24;
  int grid_per_band = 64;

  /// trunc_M = ceil(log2(4(c+2)/1e-6)) so the truncation bound is below 1e-6.
  static RhoSpec for_params(const StableParams& params);
  void validate() const;
};

struct RhoResult {
  double value = 0.0;
  double trunc_bound = 0.0;  // 4(c+2) 2^{-trunc_M}
};

/// Truncated rho distance between two members of the same S(alpha, c):
///   sup_{|t|<=1} |b1-b2| + sum_{k<M} 2^{-k} sup_{2^k<=|t|<=2^{k+1}} |b1-b2|.
/// Each band supremum is the maximum over grid_per_band uniform nodes,
/// polished by a local Brent search around the best node.
RhoResult rho(const SacMember& m1, const SacMember& m2, const RhoSpec& spec,
              const QuadratureSpec& quad);

/// max |beta1 - beta2| over [lo, hi], on `nodes` uniform points plus any
/// `extra_points` inside the interval, polished by a local search.
double beta_gap_sup(const SacMember& m1, const SacMember& m2, double lo,
                    double hi, int nodes, const QuadratureSpec& quad,
                    std::span<const double> extra_points = {});

}  // namespace stablab
