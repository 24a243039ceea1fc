#include "stablab/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "stablab/error.hpp"
#include "stablab/format.hpp"

namespace stablab {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive and finite (got " +
                          format_number(v) + ")");
  }
}

}  // namespace

Measure::Measure(SacMember member) : kind_(std::move(member)) {}

Measure Measure::two_point(double magnitude) {
  require_positive(magnitude, "twopoint v");
  return Measure(Kind{SymmetricTwoPoint{magnitude}});
}

Measure Measure::uniform(double half_width) {
  require_positive(half_width, "uniform b");
  return Measure(Kind{SymmetricUniform{half_width}});
}

Measure Measure::gaussian(double variance) {
  require_positive(variance, "gauss var");
  return Measure(Kind{CenteredGaussian{variance}});
}

double Measure::cf(double t) const {
  return std::visit(
      Overloaded{
          [&](const SacMember& m) {
            return m.cf(t, QuadratureSpec::for_params(m.params()));
          },
          [&](const SymmetricTwoPoint& p) { return std::cos(p.magnitude * t); },
          [&](const SymmetricUniform& u) {
            const double y = u.half_width * t;
            return y == 0.0 ? 1.0 : std::sin(y) / y;
          },
          [&](const CenteredGaussian& g) { return std::exp(-0.5 * g.variance * t * t); }},
      kind_);
}

double Measure::sample(RandomStream& rng) const {
  return std::visit(
      Overloaded{
          [&](const SacMember& m) { return m.sample(rng); },
          [&](const SymmetricTwoPoint& p) { return rng.sign() * p.magnitude; },
          [&](const SymmetricUniform& u) { return u.half_width * rng.uniform_symmetric(); },
          [&](const CenteredGaussian& g) { return std::sqrt(g.variance) * rng.normal(); }},
      kind_);
}

double Measure::second_moment() const {
  return std::visit(
      Overloaded{
          [](const SacMember&) { return std::numeric_limits<double>::infinity(); },
          [](const SymmetricTwoPoint& p) { return p.magnitude * p.magnitude; },
          [](const SymmetricUniform& u) { return u.half_width * u.half_width / 3.0; },
          [](const CenteredGaussian& g) { return g.variance; }},
      kind_);
}

std::string Measure::describe() const {
  return std::visit(
      Overloaded{
          [](const SacMember& m) { return m.describe(); },
          [](const SymmetricTwoPoint& p) { return "twopoint:v=" + format_number(p.magnitude); },
          [](const SymmetricUniform& u) { return "uniform:b=" + format_number(u.half_width); },
          [](const CenteredGaussian& g) { return "gauss:var=" + format_number(g.variance); }},
      kind_);
}

double second_moment(const Measure& m) { return m.second_moment(); }

MeasureModel::MeasureModel(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ValidationError("model needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!(a.prob > 0.0)) {
      throw ValidationError("atom probability must be positive (got " +
                            format_number(a.prob) + ")");
    }
    total += a.prob;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("atom probabilities must sum to 1 (got " +
                          format_number(total) + ")");
  }
}

MeasureModel MeasureModel::for_stable_limit(std::vector<Atom> atoms) {
  MeasureModel model(std::move(atoms));
  model.stable_params();
  return model;
}

StableParams MeasureModel::stable_params() const {
  const SacMember* first = atoms_.front().measure.sac();
  if (first == nullptr) {
    throw ValidationError("stable-limit model: atom 0 (" +
                          atoms_.front().measure.describe() +
                          ") is not an S(alpha, c) member");
  }
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    const SacMember* m = atoms_[i].measure.sac();
    if (m == nullptr) {
      throw ValidationError("stable-limit model: atom " + std::to_string(i) + " (" +
                            atoms_[i].measure.describe() +
                            ") is not an S(alpha, c) member");
    }
    if (m->params() != first->params()) {
      throw ValidationError("stable-limit model: atom " + std::to_string(i) +
                            " has (alpha, c) different from atom 0");
    }
  }
  return first->params();
}

std::size_t MeasureModel::draw_index(RandomStream& rng) const {
  const double u = rng.uniform();
  for (std::size_t i = 0; i < cumulative_.size(); ++i) {
    if (u < cumulative_[i]) return i;
  }
  return cumulative_.size() - 1;
}

double MeasureModel::mixture_cf(double t) const {
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.prob * a.measure.cf(t);
  return sum;
}

const Measure& draw_measure(const MeasureModel& model, RandomStream& rng) {
  return model.atoms()[model.draw_index(rng)].measure;
}

ExchangeableBlock exchangeable_block(const MeasureModel& model, std::size_t N,
                                     RandomStream& rng) {
  if (N < 1) throw ValidationError("block length N must be at least 1");
  const std::size_t index = model.draw_index(rng);
  const Measure& mu = model.atoms()[index].measure;
  ExchangeableBlock block{index, &mu, {}};
  block.samples.reserve(N);
  for (std::size_t k = 0; k < N; ++k) block.samples.push_back(mu.sample(rng));
  return block;
}

}  // namespace stablab
