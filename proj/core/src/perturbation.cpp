#include "clarklab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

constexpr double kSlack = 1e-15;

const NeighborConstants& require_constants(const ClarkData& base) {
  if (!base.constants) {
    throw Error(ErrorCode::kInvalidConstants, "base measure has no neighbour constants");
  }
  return *base.constants;
}

}  // namespace

double admissible_alpha_bound(double A, double B) {
  if (!(A > 0.0) || !(B > 0.0) || A > B || !std::isfinite(B)) {
    std::ostringstream os;
    os << "need 0 < A <= B, got A=" << A << " B=" << B;
    throw Error(ErrorCode::kInvalidConstants, os.str());
  }
  return std::min({1.0 / (3.0 * B), A / (3.0 * B * B), 0.5});
}

ConditionIISup condition_ii_sup(const ClarkData& base, std::span<const double> alpha) {
  const AtomicMeasure& m = base.measure;
  if (alpha.size() != m.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "alpha length differs from atom count");
  }
  ConditionIISup r{-1.0, 0};
  for (std::size_t n = 0; n < m.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != n) s += m[k].mass * alpha[k] / chord_distance(m[n].point, m[k].point);
    }
    if (s > r.value) r = {s, n};
  }
  if (m.empty()) r.value = 0.0;
  return r;
}

void validate(const PerturbationPlan& plan) {
  const AtomicMeasure& m = plan.base.measure;
  const std::size_t n = m.size();
  if (plan.alpha.size() != n || plan.t_offsets.size() != n || plan.eps.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "plan vectors must match the atom count");
  }
  const NeighborConstants& c = require_constants(plan.base);
  const double cap = admissible_alpha_bound(c.A, c.B);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = plan.alpha[k];
    if (!(a >= 0.0)) throw ConstraintViolation(k, bound::kAlphaSign, a, 0.0);
    if (a > cap * (1.0 + kSlack)) throw ConstraintViolation(k, bound::kAlphaCap, a, cap);
    const double budget = m[k].mass * a;
    const double chord = 2.0 * std::abs(std::sin(0.5 * plan.t_offsets[k]));
    if (chord > budget * (1.0 + kSlack)) throw ConstraintViolation(k, bound::kOffset, chord, budget);
    if (std::abs(plan.eps[k]) > budget * (1.0 + kSlack)) {
      throw ConstraintViolation(k, bound::kMass, std::abs(plan.eps[k]), budget);
    }
    if (!(m[k].mass + plan.eps[k] > 0.0)) {
      throw ConstraintViolation(k, bound::kPositivity, m[k].mass + plan.eps[k], 0.0);
    }
    if (n >= 2) {
      // An offset below a third of the adjacent gaps keeps the cyclic order.
      const NeighborGaps g = m.neighbor_gaps(k);
      const double third = std::min(g.plus, g.minus) / 3.0;
      if (chord > third) throw ConstraintViolation(k, bound::kInterleaving, chord, third);
    }
  }
}

AtomicMeasure generate(const PerturbationPlan& plan) {
  validate(plan);
  const AtomicMeasure& m = plan.base.measure;
  std::vector<Atom> atoms;
  atoms.reserve(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    atoms.push_back({m[k].point.rotated(plan.t_offsets[k]), m[k].mass + plan.eps[k]});
  }
  return AtomicMeasure(std::move(atoms));
}

PerturbationPlan random_plan(const ClarkData& base, std::uint64_t seed, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fraction must lie in [0, 1]");
  }
  const NeighborConstants& c = require_constants(base);
  const double a = fraction * admissible_alpha_bound(c.A, c.B);
  PerturbationPlan p;
  p.base = base;
  p.seed = seed;
  const std::size_t n = base.measure.size();
  p.alpha.assign(n, a);
  p.t_offsets.resize(n);
  p.eps.resize(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double budget = base.measure[k].mass * a;
    p.t_offsets[k] = budget * unit(rng);
    p.eps[k] = budget * unit(rng);
  }
  return p;
}

AtomicMeasure squared_measure(const AtomicMeasure& lambda) {
  std::vector<Atom> atoms(lambda.atoms().begin(), lambda.atoms().end());
  for (Atom& a : atoms) a.mass *= a.mass;
  return AtomicMeasure(std::move(atoms));
}

}  // namespace clarklab
