#pragma once

// Perturbations λ = Σ λ_n δ_{t_n} of a Clark measure with per-atom budgets
// σ_n α_n, validated against the admissibility caps, and squared-mass measures.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clarklab/circle.hpp"
#include "clarklab/clark.hpp"

namespace clarklab {

/// min{1/(3B), A/(3B²), 1/2}. Throws kInvalidConstants unless 0 < A ≤ B.
double admissible_alpha_bound(double A, double B);

struct ConditionIISup {
  double value = 0.0;
  std::size_t witness = 0;
};

/// max_n Σ_{m≠n} σ_m α_m/|ζ_n - ζ_m|. Throws kDimensionMismatch.
ConditionIISup condition_ii_sup(const ClarkData& base, std::span<const double> alpha);

struct PerturbationPlan {
  ClarkData base;
  std::vector<double> alpha;
  std::vector<double> t_offsets;  // signed angular offsets, radians
  std::vector<double> eps;        // mass offsets
  std::optional<std::uint64_t> seed;
};

/// Bound names reported by ConstraintViolation.
namespace bound {
inline constexpr const char* kAlphaCap = "alpha_cap";
inline constexpr const char* kAlphaSign = "alpha_nonnegative";
inline constexpr const char* kOffset = "offset";
inline constexpr const char* kMass = "mass";
inline constexpr const char* kPositivity = "positivity";
inline constexpr const char* kInterleaving = "interleaving";
}  // namespace bound

/// Throws kDimensionMismatch on length mismatch, kInvalidConstants when the
/// base has no (A, B), and ConstraintViolation on the first failing atom.
void validate(const PerturbationPlan& plan);

/// Validates, then returns atoms ζ_n rotated by t_offsets with masses σ_n + ε_n.
AtomicMeasure generate(const PerturbationPlan& plan);

/// α_n ≡ fraction·cap; offsets and ε drawn uniformly in [-σ_nα_n, σ_nα_n].
PerturbationPlan random_plan(const ClarkData& base, std::uint64_t seed, double fraction = 1.0);

/// Same atoms, squared masses.
AtomicMeasure squared_measure(const AtomicMeasure& lambda);

}  // namespace clarklab
