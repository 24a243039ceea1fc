#include "stablab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <vector>

namespace stablab {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr std::size_t kRuleNodes = 21;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel apply_rule(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  // Boost reports the single-panel error on the reference interval [-1, 1].
  return {a, b, v, err * 0.5 * (b - a)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double abs_tol,
                                    std::size_t max_evaluations) {
  QuadratureResult out;
  if (breakpoints.size() < 2) {
    out.converged = true;
    return out;
  }

  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    Panel p = apply_rule(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += kRuleNodes;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  while (total_err > abs_tol && !heap.empty() &&
         out.evaluations + 2 * kRuleNodes <= max_evaluations) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    Panel left = apply_rule(f, worst.a, mid);
    Panel right = apply_rule(f, mid, worst.b);
    out.evaluations += 2 * kRuleNodes;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = err;
  out.converged = std::isfinite(value) && err <= abs_tol;
  return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    std::size_t max_evaluations) {
  const double pts[2] = {a, b};
  return integrate_adaptive(f, pts, abs_tol, max_evaluations);
}

}  // namespace stablab
