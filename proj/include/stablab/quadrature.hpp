#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace stablab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration.
///
/// The interval is first cut at `breakpoints` (sorted, inside [a, b]); the
/// panel with the largest error estimate is then bisected until the summed
/// error estimate drops below `abs_tol` or `max_evaluations` is reached.
/// Never throws; callers inspect `converged`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double abs_tol,
                                    std::size_t max_evaluations);

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    std::size_t max_evaluations);

}  // namespace stablab
