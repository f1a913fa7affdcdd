#include "clarklab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

double canonical_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2π.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

CirclePoint CirclePoint::from_complex(Complex z) { return CirclePoint(std::arg(z)); }

double chord_distance(CirclePoint p, CirclePoint q) {
  return 2.0 * std::abs(std::sin(0.5 * (p.theta() - q.theta())));
}

double ccw_distance(CirclePoint from, CirclePoint to) {
  return canonical_angle(to.theta() - from.theta());
}

double arc_distance(CirclePoint p, CirclePoint q) {
  const double d = ccw_distance(p, q);
  return std::min(d, kTwoPi - d);
}

Arc::Arc(CirclePoint start, double length, bool closed_left, bool closed_right)
    : start_(start), length_(length), closed_left_(closed_left), closed_right_(closed_right) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::kInvalidArgument, "arc length must be in (0, 2pi]");
  }
  if (length_ >= kTwoPi - kAngleTolerance) {
    length_ = kTwoPi;
    closed_left_ = true;
    closed_right_ = false;
  }
}

Arc Arc::between(CirclePoint start, CirclePoint end, bool closed_left, bool closed_right) {
  double len = ccw_distance(start, end);
  if (len < kAngleTolerance) len = kTwoPi;
  return Arc(start, len, closed_left, closed_right);
}

Arc Arc::full_circle() { return Arc(CirclePoint(0.0), kTwoPi, true, false); }

Arc Arc::closed(double a, double b) { return Arc(CirclePoint(a), b - a, true, true); }

Arc Arc::open(double a, double b) { return Arc(CirclePoint(a), b - a, false, false); }

bool Arc::contains(CirclePoint p) const {
  if (is_full_circle()) return true;
  const double off = ccw_distance(start_, p);
  if (off < kAngleTolerance || off > kTwoPi - kAngleTolerance) return closed_left_;
  if (std::abs(off - length_) < kAngleTolerance) return closed_right_;
  return off < length_;
}

bool Arc::contains_interior(CirclePoint p) const {
  if (is_full_circle()) return true;
  const double off = ccw_distance(start_, p);
  return off >= kAngleTolerance && off <= length_ - kAngleTolerance;
}

double Arc::distance_to_complement(CirclePoint p) const {
  if (!contains_interior(p)) return 0.0;
  return std::min(chord_distance(p, start_), chord_distance(p, end()));
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      std::ostringstream os;
      os << "atom at theta=" << a.point.theta() << " has non-positive mass " << a.mass;
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.point.theta() < b.point.theta(); });
  for (std::size_t n = 0; n + 1 < atoms_.size(); ++n) {
    if (atoms_[n + 1].point.theta() - atoms_[n].point.theta() < kAngleTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "duplicate atom at theta=" << atoms_[n].point.theta();
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  if (atoms_.size() >= 2 &&
      atoms_.front().point.theta() + kTwoPi - atoms_.back().point.theta() < kAngleTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate atom across theta=0");
  }
  // Pairwise summation keeps the cached total within a few ulps.
  std::vector<double> m = masses();
  while (m.size() > 1) {
    std::vector<double> half((m.size() + 1) / 2);
    for (std::size_t i = 0; i < half.size(); ++i) {
      half[i] = m[2 * i] + (2 * i + 1 < m.size() ? m[2 * i + 1] : 0.0);
    }
    m.swap(half);
  }
  total_mass_ = m.empty() ? 0.0 : m.front();
}

std::vector<double> AtomicMeasure::masses() const {
  std::vector<double> out(atoms_.size());
  std::transform(atoms_.begin(), atoms_.end(), out.begin(), [](const Atom& a) { return a.mass; });
  return out;
}

std::vector<Complex> AtomicMeasure::points() const {
  std::vector<Complex> out(atoms_.size());
  std::transform(atoms_.begin(), atoms_.end(), out.begin(),
                 [](const Atom& a) { return a.point.z(); });
  return out;
}

double AtomicMeasure::measure_of_arc(const Arc& arc) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (arc.contains(a.point)) s += a.mass;
  }
  return s;
}

NeighborGaps AtomicMeasure::neighbor_gaps(std::size_t n) const {
  if (atoms_.size() < 2) {
    throw Error(ErrorCode::kNotEnoughAtoms, "neighbour gaps need at least two atoms");
  }
  if (n >= atoms_.size()) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  return {chord_distance(atoms_[n].point, atoms_[next(n)].point),
          chord_distance(atoms_[n].point, atoms_[prev(n)].point)};
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.mass *= factor;
  return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::rotated(double delta) const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.point = a.point.rotated(delta);
  return AtomicMeasure(std::move(out));
}

double measure_of_arc(const AtomicMeasure& m, const Arc& arc) { return m.measure_of_arc(arc); }

NeighborGaps neighbor_gaps(const AtomicMeasure& m, std::size_t n) { return m.neighbor_gaps(n); }

}  // namespace clarklab
