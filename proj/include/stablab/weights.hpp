#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace stablab {

struct ConstantWeights {};
struct PolynomialWeights {
  double gamma;  // a_k = k^gamma
};
struct GeometricWeights {
  double ratio;  // a_k = ratio^k
};
struct ExplicitWeights {
  std::vector<double> values;
};

/// Generator of coefficient prefixes a_1..a_N.
class WeightScheme {
 public:
  using Kind =
      std::variant<ConstantWeights, PolynomialWeights, GeometricWeights, ExplicitWeights>;

  static WeightScheme constant();
  static WeightScheme polynomial(double gamma);
  static WeightScheme geometric(double ratio);
  static WeightScheme explicit_values(std::vector<double> values);

  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  explicit WeightScheme(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// a_1..a_N with A_N = (sum |a_k|^alpha)^{1/alpha} and
/// delta_N = max |a_k| / A_N.
///
/// Geometric prefixes whose top coefficient would overflow are generated as
/// r^{k-N}; A_N^{-1} sum a_k Y_k and delta_N are unaffected by the rescaling.
struct WeightPrefix {
  std::vector<double> a;
  double A = 0.0;
  double delta = 0.0;
};

WeightPrefix weights_prefix(const WeightScheme& scheme, std::size_t N, double alpha);

/// Prefix built from caller-supplied coefficients.
WeightPrefix make_prefix(std::vector<double> a, double alpha);

struct UanReport {
  std::vector<std::size_t> N;
  std::vector<double> delta;
  bool pass = false;
  // Diagnostic thresholds: delta at the largest N must be below
  // `absolute_threshold` and below delta at the smallest N divided by
  // `decay_factor`.
  double absolute_threshold = 0.05;
  double decay_factor = 4.0;
};

/// Finite-N diagnostic for max |a_k| = o(A_N). With a single N only the
/// absolute threshold applies.
UanReport uan_check(const WeightScheme& scheme, double alpha,
                    const std::vector<std::size_t>& N_list);

}  // namespace stablab
