#include "stablab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stablab/error.hpp"
#include "stablab/format.hpp"

namespace stablab {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ValidationError("alpha must satisfy 0 < alpha < 2 (got " +
                          format_number(alpha) + ")");
  }
}

}  // namespace

WeightScheme WeightScheme::constant() { return WeightScheme(ConstantWeights{}); }

WeightScheme WeightScheme::polynomial(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("polynomial gamma must be >= 0 (got " +
                          format_number(gamma) + ")");
  }
  return WeightScheme(PolynomialWeights{gamma});
}

WeightScheme WeightScheme::geometric(double ratio) {
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    throw ValidationError("geometric ratio r must be > 1 (got " +
                          format_number(ratio) + ")");
  }
  return WeightScheme(GeometricWeights{ratio});
}

WeightScheme WeightScheme::explicit_values(std::vector<double> values) {
  if (values.empty()) throw ValidationError("explicit weights must be nonempty");
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("explicit weights must be finite");
  }
  return WeightScheme(ExplicitWeights{std::move(values)});
}

std::string WeightScheme::describe() const {
  if (std::holds_alternative<ConstantWeights>(kind_)) return "constant";
  if (const auto* p = std::get_if<PolynomialWeights>(&kind_)) {
    return "polynomial:gamma=" + format_number(p->gamma);
  }
  if (const auto* g = std::get_if<GeometricWeights>(&kind_)) {
    return "geometric:r=" + format_number(g->ratio);
  }
  const auto& e = std::get<ExplicitWeights>(kind_);
  std::string out = "explicit:";
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (i) out += ',';
    out += format_number(e.values[i]);
  }
  return out;
}

WeightPrefix make_prefix(std::vector<double> a, double alpha) {
  check_alpha(alpha);
  if (a.empty()) throw ValidationError("weight prefix must be nonempty");
  double largest = 0.0;
  for (double v : a) largest = std::max(largest, std::abs(v));
  if (largest == 0.0) throw ValidationError("weight prefix is identically zero");
  // Sum in units of the largest weight to keep |a|^alpha finite.
  double sum = 0.0;
  for (double v : a) sum += std::pow(std::abs(v) / largest, alpha);
  WeightPrefix out;
  out.A = largest * std::pow(sum, 1.0 / alpha);
  out.delta = largest / out.A;
  out.a = std::move(a);
  return out;
}

WeightPrefix weights_prefix(const WeightScheme& scheme, std::size_t N, double alpha) {
  check_alpha(alpha);
  if (N < 1) throw ValidationError("prefix length N must be at least 1");
  std::vector<double> a(N);
  const auto& kind = scheme.kind();
  if (std::holds_alternative<ConstantWeights>(kind)) {
    std::fill(a.begin(), a.end(), 1.0);
  } else if (const auto* p = std::get_if<PolynomialWeights>(&kind)) {
    for (std::size_t k = 1; k <= N; ++k) a[k - 1] = std::pow(static_cast<double>(k), p->gamma);
  } else if (const auto* g = std::get_if<GeometricWeights>(&kind)) {
    const double log_r = std::log(g->ratio);
    const bool rescale = static_cast<double>(N) * log_r > 600.0;
    for (std::size_t k = 1; k <= N; ++k) {
      const double exponent = rescale ? static_cast<double>(k) - static_cast<double>(N)
                                      : static_cast<double>(k);
      a[k - 1] = std::pow(g->ratio, exponent);
    }
  } else {
    const auto& values = std::get<ExplicitWeights>(kind).values;
    if (N > values.size()) {
      throw ValidationError("explicit weights have " + std::to_string(values.size()) +
                            " entries; N=" + std::to_string(N) + " requested");
    }
    std::copy_n(values.begin(), N, a.begin());
  }
  return make_prefix(std::move(a), alpha);
}

UanReport uan_check(const WeightScheme& scheme, double alpha,
                    const std::vector<std::size_t>& N_list) {
  if (N_list.empty()) throw ValidationError("N list must be nonempty");
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (N_list[i] <= N_list[i - 1]) {
      throw ValidationError("N list must be strictly increasing");
    }
  }
  UanReport report;
  for (std::size_t N : N_list) {
    report.N.push_back(N);
    report.delta.push_back(weights_prefix(scheme, N, alpha).delta);
  }
  const double first = report.delta.front();
  const double last = report.delta.back();
  report.pass = last < report.absolute_threshold &&
                (report.delta.size() < 2 || last < first / report.decay_factor);
  return report;
}

}  // namespace stablab
