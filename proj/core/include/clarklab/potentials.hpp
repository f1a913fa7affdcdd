#pragma once

// Potentials V_μ(z) = Σ μ_n/|z - ζ_n|², Poisson integrals, disk scans of
// |1 - u|²V_μ, the atom-sum criterion, radial limits at atoms, kernel norms
// and a polar quadrature oracle for local Dirichlet integrals.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "clarklab/circle.hpp"
#include "clarklab/clark.hpp"
#include "clarklab/inner.hpp"

namespace clarklab {

/// Σ m_n/|z - ζ_n|². +infinity within 1e-14 of an atom.
double potential(const AtomicMeasure& m, Complex z);

/// Σ m_n (1 - |z|²)/|z - ζ_n|². Requires |z| < 1.
double poisson(const AtomicMeasure& m, Complex z);

struct ScanConfig {
  int grid_depth = 20;             // radial levels r = 1 - 2^-j, j = 1..grid_depth
  int cluster_depth = 12;          // geometric rings at distance 2^-k around atoms and spectrum points
  std::size_t base_angular = 16;   // angular samples at j = 1, doubled per level
  std::size_t max_angular = 4096;
  int cluster_directions = 9;      // directions per ring, spread over the inward half-plane
  double support_tol = 1e-8;       // |u(ζ) - 1| allowed at a support atom
  std::vector<CirclePoint> extra_boundary_points;  // V_μ is also reported here
};

struct PotentialReport {
  // The scanned quantity is |1 - u|²V_μ = 4|a|²V_μ, whose boundary limit at an
  // atom is |u'(ζ_k)|²μ_k.
  double sup_estimate = 0.0;
  double inf_estimate = 0.0;
  Complex sup_witness{0.0};
  Complex inf_witness{0.0};
  double interior_sup = 0.0;   // grid and clusters only
  double boundary_sup = 0.0;   // atom-limit values only
  std::string grid;
  std::size_t evaluations = 0;
  std::vector<double> atom_limits;                 // aligned with m's atoms
  std::vector<CirclePoint> spectrum_points;        // spectrum of u followed by extra points
  std::vector<double> spectrum_values;             // V_μ there
  bool converged = true;                           // set by compare_truncations
  double truncation_change = 0.0;
};

/// Throws kSupportMismatch if some atom of m is not a point where u = 1.
PotentialReport sup_inf_scan(const InnerFunction& u, const AtomicMeasure& m,
                             const ScanConfig& cfg = {});

/// Marks `fine` converged when its sup, inf and spectrum values each change
/// by less than `rel_tol` relative to `coarse`.
PotentialReport compare_truncations(const PotentialReport& coarse, PotentialReport fine,
                                    double rel_tol = 0.01);

struct Lemma61Result {
  double value = 0.0;
  std::size_t witness = 0;
};

/// max_m Σ_{n≠m} μ_n/|ζ_n - ζ_m|². Throws kNotEnoughAtoms below two atoms.
Lemma61Result lemma61_criterion(const AtomicMeasure& m);

struct MassRatioResult {
  double min = 0.0;
  double max = 0.0;
  double C = 1.0;  // max(max, 1/min)
  std::size_t min_witness = 0;
  std::size_t max_witness = 0;
};

/// Extremes of μ_n·|u'(ζ_n)|². Throws kSupportMismatch unless m and the
/// Clark measure share atoms (angles within 1e-9).
MassRatioResult mass_ratio_check(const ClarkData& clark, const AtomicMeasure& m);

struct RadialLimitResult {
  double limit = 0.0;
  double target = 0.0;
  double rel_error = 0.0;
  std::vector<double> radii;
  std::vector<double> values;
};

/// |1 - u(rζ_k)|²V_μ(rζ_k) at r = 1 - 10^-j (j = 4..8 by default),
/// extrapolated to r = 1 by Neville's scheme in (1 - r).
RadialLimitResult radial_limit_check(const InnerFunction& u, const AtomicMeasure& m,
                                     std::size_t k, std::vector<double> radii = {});

struct KernelNorms {
  double hb_norm_sq = 0.0;   // (1 + |b(w)/a(w)|²)/(1 - |w|²)
  double dmu_norm_sq = 0.0;  // (1 + |w|²V_μ(w))/(1 - |w|²)
};

/// Throws kMateZero when a(w) = 0 and kInvalidArgument when |w| ≥ 1.
KernelNorms kernel_norms(const InnerFunction& u, const AtomicMeasure& m, Complex w);

struct QuadConfig {
  std::size_t angular = 8;      // Gauss-Legendre nodes per angular panel at the first level
  int order = 8;                // Gauss-Legendre nodes per radial panel at the first level
  int panels = 48;              // panels [1 - 2^{1-k}, 1 - 2^{-k}]
  int max_levels = 6;
  double rel_tol = 1e-7;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
};

/// (1/π)∬|f'|²P_μ dA. On each circle |z| = r the Poisson-weighted mean is
/// taken over angular panels graded dyadically from 1 - r around the atom;
/// each level doubles both rules.
/// Throws kQuadratureNotConverged when doubling fails to settle.
QuadResult dirichlet_quadrature(const AtomicMeasure& m,
                                const std::function<Complex(Complex)>& derivative,
                                const QuadConfig& cfg = {});

}  // namespace clarklab
