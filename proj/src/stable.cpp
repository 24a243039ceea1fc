#include "stablab/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "stablab/error.hpp"
#include "stablab/quadrature.hpp"

namespace stablab {
namespace {

constexpr double kPi = std::numbers::pi;

// -log of the damping factor exp(-c T^alpha) at the truncation point.
constexpr double kDampingExponent = 28.0;  // e^-28 ~ 6.9e-13

// Fourier inversion is used while x*T/pi stays below this many half periods.
constexpr double kMaxFourierHalfPeriods = 256.0;

double fourier_cdf(const StableParams& p, double x, const QuadratureSpec& q) {
  const double alpha = p.alpha();
  const double c = p.c();
  const double T = q.truncation;
  auto integrand = [=](double t) {
    const double damping = std::exp(-c * std::pow(t, alpha));
    if (t == 0.0) return x;
    return std::sin(t * x) / t * damping;
  };

  const double half_periods = std::abs(x) * T / kPi;
  const auto panels = static_cast<std::size_t>(
      std::max(16.0, std::ceil(half_periods)));
  std::vector<double> cuts(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    cuts[i] = T * static_cast<double>(i) / static_cast<double>(panels);
  }
  // The 1/pi prefactor relaxes the integral's own tolerance.
  const QuadratureResult r =
      integrate_adaptive(integrand, cuts, kPi * q.abs_tol, q.node_count);
  if (!r.converged) {
    throw QuadratureError("stable_cdf: inversion integral did not converge at x=" +
                          std::to_string(x) + " (error estimate " +
                          std::to_string(r.error / kPi) + ")");
  }
  return std::clamp(0.5 + r.value / kPi, 0.0, 1.0);
}

// P(X > |x|) from the tail series.
double series_tail(const StableParams& p, double x, const QuadratureSpec& q) {
  const double alpha = p.alpha();
  const double log_z = std::log(p.c()) - alpha * std::log(std::abs(x));
  double sum = 0.0;
  double largest = 0.0;
  double previous = INFINITY;
  double last = INFINITY;
  bool settled = false;
  for (int k = 1; k <= 20000; ++k) {
    const double kd = static_cast<double>(k);
    const double magnitude =
        std::exp(std::lgamma(alpha * kd) - std::lgamma(kd + 1.0) +
                 kd * log_z);
    if (alpha > 1.0 && magnitude > previous && magnitude > 1e-300) {
      // Asymptotic series: truncate before the smallest term.
      last = previous;
      settled = true;
      break;
    }
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) *
                        std::sin(kPi * alpha * kd / 2.0) * magnitude;
    sum += term;
    largest = std::max(largest, std::abs(term));
    previous = magnitude;
    if (magnitude < 1e-18 * std::max(std::abs(sum), 1e-300) ||
        magnitude < 1e-300) {
      last = magnitude;
      settled = true;
      break;
    }
  }
  const double error =
      (settled ? last : previous) + 4.0 * largest * 2.2e-16;
  if (!settled || error / kPi > q.abs_tol) {
    throw QuadratureError("stable_cdf: tail series did not reach abs_tol at x=" +
                          std::to_string(x));
  }
  return std::clamp(sum / kPi, 0.0, 1.0);
}

}  // namespace

StableParams::StableParams(double alpha, double c) : alpha_(alpha), c_(c) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ValidationError("alpha must satisfy 0 < alpha < 2 (got " +
                          std::to_string(alpha) + ")");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ValidationError("c must be positive and finite (got " +
                          std::to_string(c) + ")");
  }
}

QuadratureSpec QuadratureSpec::for_params(const StableParams& params,
                                          double abs_tol,
                                          std::size_t node_count) {
  QuadratureSpec q;
  q.truncation = std::pow(kDampingExponent / params.c(), 1.0 / params.alpha());
  q.node_count = node_count;
  q.abs_tol = abs_tol;
  return q;
}

void QuadratureSpec::validate(const StableParams& params) const {
  if (!(abs_tol > 0.0)) throw ValidationError("abs_tol must be positive");
  if (node_count == 0) throw ValidationError("node_count must be positive");
  if (!(truncation > 0.0) ||
      !(std::exp(-params.c() * std::pow(truncation, params.alpha())) < 1e-12)) {
    throw ValidationError(
        "truncation too small: exp(-c T^alpha) must be below 1e-12");
  }
}

double stable_cf(const StableParams& params, double t) {
  return std::exp(-params.c() * std::pow(std::abs(t), params.alpha()));
}

double stable_cdf(const StableParams& params, double x,
                  const QuadratureSpec& quad) {
  quad.validate(params);
  if (std::isnan(x)) throw ValidationError("stable_cdf: x is NaN");
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  if (std::abs(x) * quad.truncation / kPi <= kMaxFourierHalfPeriods) {
    return fourier_cdf(params, x, quad);
  }
  const double tail = series_tail(params, x, quad);
  return x > 0 ? 1.0 - tail : tail;
}

double cms_symmetric(double alpha, double angle, double w) {
  if (alpha == 1.0) return std::tan(angle);
  const double s = std::sin(alpha * angle);
  if (std::abs(alpha - 1.0) < 1e-4) {
    // Log-space form: the (1-alpha)/alpha power of a ratio near 1.
    const double log_mag =
        std::log(std::abs(s)) - std::log(std::cos(angle)) / alpha +
        (1.0 - alpha) / alpha *
            (std::log(std::cos((1.0 - alpha) * angle)) - std::log(w));
    return std::copysign(std::exp(log_mag), s);
  }
  return s / std::pow(std::cos(angle), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * angle) / w, (1.0 - alpha) / alpha);
}

double stable_sample(const StableParams& params, RandomStream& rng) {
  const double angle = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  return std::pow(params.c(), 1.0 / params.alpha()) *
         cms_symmetric(params.alpha(), angle, w);
}

}  // namespace stablab
