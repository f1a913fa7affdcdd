#pragma once

// Clark atoms u(ζ) = e^{2πiα} located by bisection on the monotone boundary
// phase, their masses 1/|u'(ζ)|, the level-set partition T_N, and the
// empirical comparability checks that go with it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clarklab/circle.hpp"
#include "clarklab/inner.hpp"

namespace clarklab {

inline constexpr double kDefaultAtomTolerance = 1e-12;

struct ScanOptions {
  double tol = kDefaultAtomTolerance;
  double spectrum_radius = kDefaultSpectrumRadius;
  /// Pre-sampling uses max(10·tol, length/samples) as its step.
  std::size_t samples = 4096;
};

struct LevelScan {
  std::vector<CirclePoint> points;  // in scan order (counterclockwise from arc start)
  std::vector<double> offsets;      // θ - start for each point
  std::vector<long long> levels;    // k such that phase = offset + k·spacing
  std::vector<std::size_t> edge_uncertain;
  double winding = 0.0;             // phase increment over the arc / 2π
};

/// All θ in `scan` where the boundary phase equals `level_offset + k·spacing`
/// for some integer k. Throws kSpectrumPoint if the arc comes within
/// opts.spectrum_radius of the spectrum and kPhaseMonotonicityViolation if
/// the sampled phase fails to increase.
LevelScan scan_phase_levels(const InnerFunction& u, double level_offset, double spacing,
                            const Arc& scan, const ScanOptions& opts = {});

/// Points of `scan` where u = e^{2πiα}, sorted by angle.
std::vector<CirclePoint> find_atoms(const InnerFunction& u, double alpha, const Arc& scan,
                                    double tol = kDefaultAtomTolerance);
std::vector<CirclePoint> find_atoms(const InnerFunction& u, double alpha, const Arc& scan,
                                    const ScanOptions& opts);

/// Extremal mass-to-gap ratios of Bessonov's neighbour condition:
/// A = min σ_n / max(gap⁺, gap⁻), B = max σ_n / min(gap⁺, gap⁻).
struct NeighborConstants {
  double A = 0.0;
  double B = 0.0;
  std::size_t a_witness = 0;
  std::size_t b_witness = 0;
};

/// Gaps that straddle a declared accumulation point are artefacts of
/// truncation and are left out; atoms with no usable gap are skipped.
/// Empty when fewer than two atoms (or no usable gap) exist.
std::optional<NeighborConstants> neighbor_constants(const AtomicMeasure& m,
                                                    std::span<const CirclePoint> accumulation = {});

/// True if the counterclockwise gap from atom n to its successor contains
/// one of the accumulation points.
bool gap_straddles(const AtomicMeasure& m, std::size_t n, std::span<const CirclePoint> accumulation);

struct ClarkData {
  double alpha = 0.0;
  AtomicMeasure measure;
  std::vector<double> derivatives;                // |u'(ζ_n)|, aligned with measure atoms
  std::optional<NeighborConstants> constants;     // (A, B) over this truncation
  std::vector<CirclePoint> accumulation;          // declared accumulation points
  std::vector<std::size_t> edge_uncertain;        // indices into measure
};

/// Assembles ClarkData from atoms and derivatives (masses are 1/|u'|).
ClarkData make_clark_data(double alpha, std::span<const CirclePoint> atoms,
                          std::span<const double> derivatives,
                          std::vector<CirclePoint> accumulation = {});

/// Atoms, masses 1/|u'(ζ_n)| and (A, B). The spectrum of u is used as the
/// declared accumulation set.
ClarkData clark_data(const InnerFunction& u, double alpha, const Arc& scan,
                     double tol = kDefaultAtomTolerance);
ClarkData clark_data(const InnerFunction& u, double alpha, const Arc& scan,
                     const ScanOptions& opts);

/// Arcs J_n = [t_{n1}, t_{n2}) between consecutive points of
/// T_N = {u(t) = e^{2πiℓ/N}}. On the full circle the closing arc is included.
std::vector<Arc> partition_T_N(const InnerFunction& u, int N, const Arc& scan,
                               const ScanOptions& opts = {});

struct FeichtingerReport {
  int N = 0;
  std::size_t arc_count = 0;
  double max_derivative_ratio = 1.0;  // max over J_n, t ∈ J_n of |u'(t)|/|u'(t_{n1})| and its reciprocal
  std::size_t ratio_witness = 0;
  double min_length_product = 0.0;    // min |J_n|·N·|u'(t_{n1})|
  double max_length_product = 0.0;
  double c1 = 100.0 / 81.0;
  double c2 = kTwoPi * 100.0 / 81.0;
  bool ratio_pass = false;
  bool length_pass = false;
  bool pass = false;
  std::string note;
};

/// Empirical Baranov–Dyakonov constants on T_N. The admissible N depends on a
/// constant with no closed form, so pass/fail is only evidence.
FeichtingerReport feichtinger_check(const InnerFunction& u, int N, const Arc& scan,
                                    const ScanOptions& opts = {});

struct ComparabilityReport {
  std::size_t arc_count = 0;
  double min_alpha_ratio = 0.0;  // σ(Q)/σ^α(Q)
  double max_alpha_ratio = 0.0;
  std::size_t lebesgue_arc_count = 0;  // arcs with ≥ 2 atoms of σ
  double min_lebesgue_ratio = 0.0;     // σ(Q)/|Q|
  double max_lebesgue_ratio = 0.0;
  double empirical_K = 1.0;            // max(max ratio, 1/min ratio) over both families
};

/// Throws kEmptyArc when an arc misses every atom of either measure.
ComparabilityReport comparability_check(const ClarkData& data, const ClarkData& data_alpha,
                                        std::span<const Arc> arcs);

}  // namespace clarklab
