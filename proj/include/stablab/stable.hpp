#pragma once

#include <cstddef>

#include "stablab/random.hpp"

namespace stablab {

/// Index (alpha, c) of the symmetric stable law with characteristic function
/// exp(-c |t|^alpha). Requires 0 < alpha < 2 and c > 0; anything else is
/// rejected at construction.
class StableParams {
 public:
  StableParams(double alpha, double c);

  double alpha() const { return alpha_; }
  double c() const { return c_; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double alpha_;
  double c_;
};

/// Numerical settings for the Fourier-inversion CDF and the quadrature-backed
/// members of the S(alpha, c) catalogue.
struct QuadratureSpec {
  double truncation = 0.0;  // upper limit T of the inversion integral
  std::size_t node_count = 400000;  // integrand evaluation budget per call
  double abs_tol = 1e-8;

  /// Truncation chosen so that exp(-c T^alpha) < 1e-12.
  static QuadratureSpec for_params(const StableParams& params,
                                   double abs_tol = 1e-8,
                                   std::size_t node_count = 400000);

  /// Throws ValidationError unless abs_tol > 0, node_count > 0 and T meets
  /// the damping requirement for `params`.
  void validate(const StableParams& params) const;
};

/// exp(-c |t|^alpha).
double stable_cf(const StableParams& params, double t);

/// Distribution function of G_{alpha,c}.
///
/// Evaluated by Fourier inversion
///   F(x) = 1/2 + (1/pi) \int_0^T sin(tx)/t exp(-c t^alpha) dt
/// with an adaptive panel scheme while the integrand has at most a few
/// hundred half-oscillations on [0, T]. Further out the tail series
///   1 - F(x) = (1/pi) sum_k (-1)^{k+1} Gamma(alpha k)/k!
///              sin(pi alpha k / 2) (c |x|^-alpha)^k
/// is summed instead (convergent for alpha <= 1, asymptotic for alpha > 1).
/// Throws QuadratureError when the error estimate exceeds quad.abs_tol.
double stable_cdf(const StableParams& params, double x,
                  const QuadratureSpec& quad);

/// Chambers-Mallows-Stuck transform for the symmetric case with unit scale:
/// angle in (-pi/2, pi/2), w > 0 an exponential variate.
double cms_symmetric(double alpha, double angle, double w);

/// One draw from G_{alpha,c}: cms_symmetric scaled by c^{1/alpha}.
double stable_sample(const StableParams& params, RandomStream& rng);

}  // namespace stablab
