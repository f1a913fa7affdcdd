#pragma once

// Inner functions built from finite Blaschke products and atomic singular
// factors, with boundary phase, angular derivative and the Pythagorean pair
// b = (1 + u)/2, a = γ(1 - u)/2.

#include <variant>
#include <vector>

#include "clarklab/circle.hpp"

namespace clarklab {

/// Default radius (chordal) around spectrum points that scans must avoid.
inline constexpr double kDefaultSpectrumRadius = 1e-8;

/// Angular derivatives above this are reported as +infinity.
inline constexpr double kDerivativeCap = 1e15;

/// front · Π (|a|/a)(a - z)/(1 - ā z); a zero at the origin contributes z.
/// Infinite products only ever appear through explicit finite truncations.
struct FiniteBlaschke {
  std::vector<Complex> zeros;
  Complex front{1.0, 0.0};

  friend bool operator==(const FiniteBlaschke&, const FiniteBlaschke&) = default;
};

struct SingularAtom {
  CirclePoint point;
  double weight = 0.0;

  friend bool operator==(const SingularAtom&, const SingularAtom&) = default;
};

/// exp(-Σ w_j (ξ_j + z)/(ξ_j - z)).
struct SingularAtomic {
  std::vector<SingularAtom> atoms;

  friend bool operator==(const SingularAtomic&, const SingularAtomic&) = default;
};

class InnerFunction;

struct Product {
  std::vector<InnerFunction> factors;

  friend bool operator==(const Product&, const Product&);
};

/// Tagged union over the supported inner functions. Validates on
/// construction: zeros strictly inside the disk, positive singular weights,
/// unimodular front constant.
class InnerFunction {
 public:
  using Variant = std::variant<FiniteBlaschke, SingularAtomic, Product>;

  InnerFunction(FiniteBlaschke b);
  InnerFunction(SingularAtomic s);
  InnerFunction(Product p);

  static InnerFunction identity() { return InnerFunction(FiniteBlaschke{{Complex(0.0)}, 1.0}); }
  static InnerFunction monomial(int k);
  static InnerFunction blaschke(std::vector<Complex> zeros, Complex front = 1.0);
  static InnerFunction singular(std::vector<SingularAtom> atoms);
  static InnerFunction product(std::vector<InnerFunction> factors);

  const Variant& variant() const noexcept { return v_; }

  /// u(z) for |z| ≤ 1. Throws kSpectrumPoint at a singular atom.
  Complex operator()(Complex z) const;

  /// Points of the boundary spectrum known from the representation (the
  /// singular atoms). Finite Blaschke products contribute none.
  std::vector<CirclePoint> spectrum() const;

  /// Number of Blaschke zeros, counted through products.
  std::size_t blaschke_degree() const;

  friend bool operator==(const InnerFunction&, const InnerFunction&) = default;

 private:
  Variant v_;
};

Complex eval(const InnerFunction& u, Complex z);

/// Continuous, strictly increasing branch of arg u(e^{iθ}) along any real
/// interval of θ that avoids the spectrum. The branch is fixed by closed
/// forms: a Blaschke factor contributes θ + π - arg a + 2 atan2(r sin(θ-ψ), 1 - r cos(θ-ψ)),
/// a singular atom contributes -w cot((θ - θ_j)/2).
/// Throws kSpectrumPoint within `spectrum_radius` (chordal) of the spectrum.
double boundary_phase(const InnerFunction& u, double theta,
                      double spectrum_radius = kDefaultSpectrumRadius);

/// Same branch, no spectrum check. Used in inner loops where the caller has
/// already validated the scanned arc.
double boundary_phase_unchecked(const InnerFunction& u, double theta);

/// |u'(ζ)| = Σ (1 - |a|²)/|ζ - a|² + Σ 2w/|ζ - ξ|². Returns +infinity above
/// kDerivativeCap. Throws kSpectrumPoint at a singular atom.
double angular_derivative(const InnerFunction& u, CirclePoint zeta);

/// Chordal distance from p to the nearest spectrum point (+inf if none).
double distance_to_spectrum(const InnerFunction& u, CirclePoint p);

struct PythagoreanPair {
  InnerFunction u;
  Complex gamma;  // unimodular, (1 - u(0))·gamma > 0

  Complex b(Complex z) const;
  Complex a(Complex z) const;
};

/// Throws kDegenerateSymbol when u(0) = 1.
PythagoreanPair pythagorean_pair(const InnerFunction& u);

/// |(1 - |u(z)|²)/|e^{2πiα} - u(z)|² - Σ m_n (1 - |z|²)/|ξ_n - z|²|.
double clark_identity_residual(const InnerFunction& u, double alpha, const AtomicMeasure& m,
                               Complex z);

}  // namespace clarklab
