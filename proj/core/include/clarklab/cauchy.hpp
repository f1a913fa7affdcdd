#pragma once

// Finite sections of the truncated Cauchy transform
//   C_σ f(ζ_n) = Σ_{m≠n} f(ζ_m) σ_m / (1 - conj(ζ_m) ζ_n)
// on an atomic measure, in the weighted coordinates A[n,m] = √σ_n √σ_m K(n,m).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "clarklab/circle.hpp"

namespace clarklab {

/// Sections up to this size keep the dense matrix; larger ones are matrix-free.
inline constexpr std::size_t kDenseSectionLimit = 8192;

class CauchySection {
 public:
  explicit CauchySection(const AtomicMeasure& m);

  std::size_t size() const noexcept { return points_.size(); }
  const AtomicMeasure& measure() const noexcept { return measure_; }
  std::span<const Complex> points() const noexcept { return points_; }
  std::span<const double> masses() const noexcept { return masses_; }
  bool dense() const noexcept { return !matrix_.empty(); }

  /// 1/(1 - conj(ζ_m) ζ_n) for n ≠ m, 0 on the diagonal.
  Complex kernel(std::size_t n, std::size_t m) const;
  /// A[n,m] = √σ_n √σ_m kernel(n, m).
  Complex entry(std::size_t n, std::size_t m) const;

  /// y = A x in the weighted coordinates x_n = f(ζ_n)√σ_n.
  std::vector<Complex> weighted_apply(std::span<const Complex> x) const;

  /// Row-major dense matrix; empty for matrix-free sections.
  std::span<const Complex> matrix() const noexcept { return matrix_; }

 private:
  AtomicMeasure measure_;
  std::vector<Complex> points_;
  std::vector<double> masses_;
  std::vector<double> sqrt_masses_;
  std::vector<Complex> matrix_;
};

/// Σ_{m≠n} σ_m/(1 - conj(ζ_m) ζ_n).
Complex cauchy_of_one(const CauchySection& s, std::size_t n);

/// (C_σ f)(ζ_n) in unweighted coordinates. Throws kDimensionMismatch.
std::vector<Complex> apply(const CauchySection& s, std::span<const Complex> f);

/// ‖f‖ in L²(σ).
double l2_norm(const CauchySection& s, std::span<const Complex> f);

struct PowerConfig {
  double rel_tol = 1e-10;
  int max_iterations = 10000;
  std::uint64_t restart_seed = 0x5eed;
};

struct SectionNorm {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  int restarts = 0;
};

/// Largest singular value of A by power iteration on A*A from (1,…,1)/√N.
SectionNorm section_norm(const CauchySection& s, const PowerConfig& cfg = {});

struct OperatorNormEstimate {
  std::vector<std::size_t> sizes;
  std::vector<double> lower_bounds;
  std::vector<bool> converged;
  std::vector<int> iterations;
  bool monotone = true;         // nondecreasing within 1e-9
  double last_growth = 0.0;     // relative growth over the last doubling
  bool plateau = false;         // last_growth < plateau_tol; an engineering threshold
  double plateau_tol = 0.05;
};

/// `source(N)` supplies the N-atom section. Sizes must increase.
OperatorNormEstimate operator_norm(std::span<const std::size_t> sizes,
                                   const std::function<AtomicMeasure(std::size_t)>& source,
                                   const PowerConfig& cfg = {});

struct TolsaReport {
  double max_ratio = 0.0;
  std::size_t witness_start = 0;   // first atom of the witness arc
  std::size_t witness_count = 0;   // number of atoms it contains
  Arc witness_arc = Arc::full_circle();
  std::size_t arc_count = 0;
};

/// max over arcs Q of ‖C_σ χ_Q‖_{L²(σ)}/σ(Q)^{1/2}. Arcs are enumerated as
/// cyclic runs of consecutive atoms; the witness arc has its endpoints at
/// midpoints between atoms. Throws kNotEnoughAtoms below two atoms.
TolsaReport tolsa_scan(const CauchySection& s);

struct TailIntegral {
  double lhs = 0.0;        // Σ_{ζ_j ∉ Q} σ_j/|ζ_j - ζ_i|²
  double rhs_scale = 0.0;  // 1/dist(ζ_i, 𝕋 \ Q)
  double ratio = 0.0;      // lhs / rhs_scale
};

/// Throws kBoundaryAtom if ζ_i sits on ∂Q and kInvalidArgument if outside Q.
TailIntegral tail_integral_check(const CauchySection& s, const Arc& Q, std::size_t i);

/// Closed-form index n of an exp-example atom ζ = (2nπi+1)/(2nπi-1), or
/// kWrongFamily if ζ is not of that form.
long long exp_atom_index(Complex zeta);

/// C_σ f through the discrete Hilbert transform
///   (C_σ f)(ζ_n) = ((2nπi-1)/(4πi)) Σ_{m≠n} x_m/(n - m),  x_m = (2mπi+1) f(ζ_m) σ_m.
/// Throws kWrongFamily unless the section is an exp-example truncation.
std::vector<Complex> hilbert_route(const CauchySection& s, std::span<const Complex> f);

}  // namespace clarklab
