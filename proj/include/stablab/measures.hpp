#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stablab/random.hpp"
#include "stablab/sac.hpp"

namespace stablab {

/// Equal mass at -v and +v.
struct SymmetricTwoPoint {
  double magnitude;
};

/// Uniform on (-b, b).
struct SymmetricUniform {
  double half_width;
};

struct CenteredGaussian {
  double variance;
};

/// A sampleable symmetric (mean-zero) law: either a member of some S(alpha, c)
/// or one of the finite-variance kinds used by the mixed-normal experiments.
class Measure {
 public:
  using Kind =
      std::variant<SacMember, SymmetricTwoPoint, SymmetricUniform, CenteredGaussian>;

  Measure(SacMember member);  // NOLINT: implicit by intent
  static Measure two_point(double magnitude);
  static Measure uniform(double half_width);
  static Measure gaussian(double variance);

  double cf(double t) const;
  double sample(RandomStream& rng) const;
  /// \int x^2 dmu; +infinity for every S(alpha, c) member.
  double second_moment() const;
  double mean() const { return 0.0; }
  double variance() const { return second_moment(); }

  const SacMember* sac() const { return std::get_if<SacMember>(&kind_); }
  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  explicit Measure(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

double second_moment(const Measure& m);

struct Atom {
  double prob;
  Measure measure;
};

/// Finitely supported random measure: measure i is drawn with probability
/// atoms[i].prob.
class MeasureModel {
 public:
  /// Probabilities must be positive and sum to 1 within 1e-12.
  explicit MeasureModel(std::vector<Atom> atoms);

  /// Model for a stable-limit experiment: every atom must be an S(alpha, c)
  /// member with the same (alpha, c).
  static MeasureModel for_stable_limit(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Shared (alpha, c) of the atoms; throws ValidationError when the atoms
  /// are not all S(alpha, c) members of one class.
  StableParams stable_params() const;

  std::size_t draw_index(RandomStream& rng) const;

  /// sum_i p_i cf_i(t): the unconditional characteristic function of Y_1.
  double mixture_cf(double t) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

const Measure& draw_measure(const MeasureModel& model, RandomStream& rng);

struct ExchangeableBlock {
  std::size_t atom_index;
  const Measure* measure;
  std::vector<double> samples;
};

/// One draw of the random measure, then N conditionally i.i.d. samples from it.
ExchangeableBlock exchangeable_block(const MeasureModel& model, std::size_t N,
                                     RandomStream& rng);

}  // namespace stablab
