#pragma once

// Geometry on the unit circle: points, arcs and purely atomic measures.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace clarklab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angles closer than this are treated as the same point.
inline constexpr double kAngleTolerance = 1e-12;

/// Reduces an angle to [0, 2π).
double canonical_angle(double theta);

/// A point e^{iθ} of the unit circle, θ kept in [0, 2π).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double theta) : theta_(canonical_angle(theta)) {}

  static CirclePoint from_complex(Complex z);

  double theta() const noexcept { return theta_; }
  Complex z() const { return std::polar(1.0, theta_); }

  CirclePoint rotated(double delta) const { return CirclePoint(theta_ + delta); }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  double theta_ = 0.0;
};

/// |e^{ip} - e^{iq}| = 2|sin((p - q)/2)|.
double chord_distance(CirclePoint p, CirclePoint q);

/// Counterclockwise angular distance from `from` to `to`, in [0, 2π).
double ccw_distance(CirclePoint from, CirclePoint to);

/// Shortest arc-length distance, in [0, π].
double arc_distance(CirclePoint p, CirclePoint q);

/// Counterclockwise arc from `start` spanning `length` radians. Carrying the
/// length instead of an end point keeps the full circle representable.
class Arc {
 public:
  Arc(CirclePoint start, double length, bool closed_left = true, bool closed_right = false);

  /// Arc from `start` counterclockwise to `end`. Equal endpoints give the full circle.
  static Arc between(CirclePoint start, CirclePoint end, bool closed_left = true,
                     bool closed_right = false);
  static Arc full_circle();
  /// Closed arc [a, b] where a, b are real angles with a < b ≤ a + 2π.
  static Arc closed(double a, double b);
  /// Open arc (a, b).
  static Arc open(double a, double b);

  CirclePoint start() const noexcept { return start_; }
  CirclePoint end() const { return start_.rotated(length_); }
  CirclePoint midpoint() const { return start_.rotated(0.5 * length_); }
  double length() const noexcept { return length_; }
  bool closed_left() const noexcept { return closed_left_; }
  bool closed_right() const noexcept { return closed_right_; }
  bool is_full_circle() const noexcept { return length_ >= kTwoPi; }

  /// Real angle of the start; angles inside the arc are start_angle() + [0, length].
  double start_angle() const noexcept { return start_.theta(); }

  bool contains(CirclePoint p) const;
  /// True when p is inside the arc and not on either endpoint.
  bool contains_interior(CirclePoint p) const;

  /// Chordal distance from p to the complement of the arc, i.e. to the
  /// nearer endpoint. Zero on the boundary; meaningless for the full circle.
  double distance_to_complement(CirclePoint p) const;

 private:
  CirclePoint start_;
  double length_;
  bool closed_left_;
  bool closed_right_;
};

struct Atom {
  CirclePoint point;
  double mass = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct NeighborGaps {
  double plus = 0.0;   // chord to the counterclockwise neighbour
  double minus = 0.0;  // chord to the clockwise neighbour
};

/// Finite positive combination of Dirac masses on the circle, sorted by angle
/// with circular neighbour structure. Immutable after construction.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  /// Sorts the atoms; throws kInvalidArgument on non-positive or non-finite
  /// masses and on atoms closer than kAngleTolerance.
  explicit AtomicMeasure(std::vector<Atom> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  const Atom& operator[](std::size_t n) const { return atoms_[n]; }
  double total_mass() const noexcept { return total_mass_; }

  std::vector<double> masses() const;
  std::vector<Complex> points() const;

  std::size_t next(std::size_t n) const { return n + 1 == atoms_.size() ? 0 : n + 1; }
  std::size_t prev(std::size_t n) const { return n == 0 ? atoms_.size() - 1 : n - 1; }

  double measure_of_arc(const Arc& arc) const;
  /// Throws kNotEnoughAtoms for fewer than two atoms.
  NeighborGaps neighbor_gaps(std::size_t n) const;

  AtomicMeasure scaled(double factor) const;
  AtomicMeasure rotated(double delta) const;

  friend bool operator==(const AtomicMeasure& a, const AtomicMeasure& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
};

double measure_of_arc(const AtomicMeasure& m, const Arc& arc);
NeighborGaps neighbor_gaps(const AtomicMeasure& m, std::size_t n);

}  // namespace clarklab
