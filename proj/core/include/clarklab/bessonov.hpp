#pragma once

// Numeric verdict on Bessonov's five conditions for a truncated atomic
// measure, and the admissibility check for perturbed Clark measures.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarklab/circle.hpp"
#include "clarklab/clark.hpp"

namespace clarklab {

enum class Verdict { kPass, kPassWithFlags, kFail };

std::string_view to_string(Verdict v);

struct ConditionRecord {
  bool ok = true;
  bool flagged = false;
  std::string note;
};

struct BessonovTolerances {
  /// Condition (iv) fails when log(μ_n/gap_n) has a slope beyond this
  /// against log distance to the nearest accumulation point.
  double slope_tol = 0.5;
  std::size_t min_slope_atoms = 8;
  double spread_warning = 1e6;   // B/A above this is flagged
  double c1_threshold = 1e6;     // sup |C_μ1| above this fails
};

struct BessonovReport {
  std::size_t atom_count = 0;

  // (i) support: gap statistics only; zero length of the closed support is
  // not decidable from a truncation.
  double gap_sum = 0.0;  // chordal
  double max_gap = 0.0;
  std::size_t max_gap_witness = 0;
  ConditionRecord support;

  // (ii) isolation
  double min_gap = 0.0;
  std::size_t min_gap_witness = 0;
  ConditionRecord isolation;

  // (iii) neighbours
  std::vector<std::size_t> straddling_gaps;  // gap n -> n+1 contains an accumulation point
  ConditionRecord neighbors;

  // (iv) constants; raw uses every gap, interior drops straddling gaps.
  double A = 0.0;
  double B = 0.0;
  std::size_t a_witness = 0;
  std::size_t b_witness = 0;
  double raw_A = 0.0;
  double raw_B = 0.0;
  double decay_slope = 0.0;
  bool slope_tested = false;
  ConditionRecord constants;

  // (v) sup |C_μ1| over atoms away from accumulation points
  double sup_c1 = 0.0;
  std::size_t c1_witness = 0;
  std::size_t c1_atoms = 0;
  ConditionRecord cauchy;

  Verdict verdict = Verdict::kPass;
};

BessonovReport bessonov_check(const AtomicMeasure& m, std::span<const CirclePoint> accumulation = {},
                              const BessonovTolerances& tol = {});

struct AdmissibilityReport {
  std::vector<double> alpha;   // max(|t_n - ζ_n|, |λ_n - σ_n|)/σ_n
  std::vector<std::size_t> pairing;  // perturbed atom paired with each original atom
  double max_alpha = 0.0;
  std::size_t witness = 0;
  double cap = 0.0;
  bool pass = false;
};

/// Pairs atoms by the best cyclic shift in {-1, 0, 1} and recovers α_n.
/// Throws kSupportMismatch on a cardinality mismatch.
AdmissibilityReport perturbed_admissibility(const ClarkData& original, const AtomicMeasure& perturbed);

}  // namespace clarklab
