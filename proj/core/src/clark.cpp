#include "clarklab/clark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

void check_scan_avoids_spectrum(const InnerFunction& u, const Arc& scan, double radius) {
  for (const CirclePoint& s : u.spectrum()) {
    const bool inside = scan.is_full_circle() || scan.contains_interior(s);
    const double d = scan.is_full_circle()
                         ? 0.0
                         : std::min(chord_distance(s, scan.start()), chord_distance(s, scan.end()));
    if (inside || d < radius) {
      std::ostringstream os;
      os.precision(17);
      os << "scan arc starting at " << scan.start_angle() << " of length " << scan.length()
         << " reaches the spectrum point theta=" << s.theta();
      throw Error(ErrorCode::kSpectrumPoint, os.str());
    }
  }
}

double bisect_level(const InnerFunction& u, double lo, double hi, double level, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (boundary_phase_unchecked(u, mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // The phase is smooth with derivative |u'|, so Newton steps inside the
  // bracket recover the digits bisection stopped short of.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double next = t - (boundary_phase_unchecked(u, t) - level) / angular_derivative(u, CirclePoint(t));
    if (!(next >= lo && next <= hi) || next == t) break;
    t = next;
  }
  return t;
}

}  // namespace

LevelScan scan_phase_levels(const InnerFunction& u, double level_offset, double spacing,
                            const Arc& scan, const ScanOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  if (!(spacing > 0.0)) throw Error(ErrorCode::kInvalidArgument, "level spacing must be positive");
  check_scan_avoids_spectrum(u, scan, opts.spectrum_radius);

  const double start = scan.start_angle();
  const double len = scan.length();
  const double step = std::max(10.0 * opts.tol, len / static_cast<double>(opts.samples));
  const auto intervals = static_cast<std::size_t>(std::ceil(len / step));

  std::vector<double> theta(intervals + 1);
  std::vector<double> phase(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    theta[i] = (i == intervals) ? start + len : start + len * static_cast<double>(i) / intervals;
    phase[i] = boundary_phase_unchecked(u, theta[i]);
    if (i > 0 && !(phase[i] > phase[i - 1])) {
      std::ostringstream os;
      os.precision(17);
      os << "phase not increasing between theta=" << theta[i - 1] << " and " << theta[i];
      throw Error(ErrorCode::kPhaseMonotonicityViolation, os.str());
    }
  }

  LevelScan out;
  out.winding = (phase.back() - phase.front()) / kTwoPi;
  const bool full = scan.is_full_circle();
  const double edge = 10.0 * opts.tol;

  for (std::size_t i = 0; i < intervals; ++i) {
    auto k = static_cast<long long>(std::ceil((phase[i] - level_offset) / spacing));
    for (;; ++k) {
      const double level = level_offset + spacing * static_cast<double>(k);
      if (level < phase[i]) continue;
      const bool last = (i + 1 == intervals);
      if (level > phase[i + 1]) break;
      if (level == phase[i + 1] && !(last && scan.closed_right() && !full)) break;
      if (i == 0 && level == phase[0] && !scan.closed_left()) continue;
      const double t = bisect_level(u, theta[i], theta[i + 1], level, opts.tol);
      const double off = t - start;
      out.points.emplace_back(t);
      out.offsets.push_back(off);
      out.levels.push_back(k);
      if (!full && (off < edge || off > len - edge)) out.edge_uncertain.push_back(out.points.size() - 1);
    }
  }
  // On a full circle the end phase can round just above phase(start) + 2πw, so a
  // level hit at the start reappears at the end one winding later.
  if (full && out.points.size() > 1) {
    const auto per_turn = static_cast<long long>(std::llround(kTwoPi / spacing * out.winding));
    if (out.levels.back() - out.levels.front() == per_turn &&
        chord_distance(out.points.back(), out.points.front()) <= edge) {
      out.points.pop_back();
      out.offsets.pop_back();
      out.levels.pop_back();
    }
  }
  return out;
}

std::vector<CirclePoint> find_atoms(const InnerFunction& u, double alpha, const Arc& scan,
                                    double tol) {
  ScanOptions opts;
  opts.tol = tol;
  return find_atoms(u, alpha, scan, opts);
}

std::vector<CirclePoint> find_atoms(const InnerFunction& u, double alpha, const Arc& scan,
                                    const ScanOptions& opts) {
  LevelScan s = scan_phase_levels(u, kTwoPi * alpha, kTwoPi, scan, opts);
  std::sort(s.points.begin(), s.points.end(),
            [](CirclePoint a, CirclePoint b) { return a.theta() < b.theta(); });
  return s.points;
}

bool gap_straddles(const AtomicMeasure& m, std::size_t n, std::span<const CirclePoint> accumulation) {
  const CirclePoint a = m[n].point;
  const double gap = ccw_distance(a, m[m.next(n)].point);
  const double span = (m.size() == 1 || gap == 0.0) ? kTwoPi : gap;
  for (const CirclePoint& p : accumulation) {
    const double d = ccw_distance(a, p);
    if (d > 0.0 && d < span) return true;
  }
  return false;
}

std::optional<NeighborConstants> neighbor_constants(const AtomicMeasure& m,
                                                    std::span<const CirclePoint> accumulation) {
  if (m.size() < 2) return std::nullopt;
  NeighborConstants c{std::numeric_limits<double>::infinity(), 0.0, 0, 0};
  bool any = false;
  for (std::size_t n = 0; n < m.size(); ++n) {
    const NeighborGaps g = m.neighbor_gaps(n);
    const bool plus_ok = !gap_straddles(m, n, accumulation);
    const bool minus_ok = !gap_straddles(m, m.prev(n), accumulation);
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    if (plus_ok) {
      hi = std::max(hi, g.plus);
      lo = std::min(lo, g.plus);
    }
    if (minus_ok) {
      hi = std::max(hi, g.minus);
      lo = std::min(lo, g.minus);
    }
    if (!plus_ok && !minus_ok) continue;
    any = true;
    const double lower = m[n].mass / hi;
    const double upper = m[n].mass / lo;
    if (lower < c.A) {
      c.A = lower;
      c.a_witness = n;
    }
    if (upper > c.B) {
      c.B = upper;
      c.b_witness = n;
    }
  }
  if (!any) return std::nullopt;
  return c;
}

ClarkData make_clark_data(double alpha, std::span<const CirclePoint> atoms,
                          std::span<const double> derivatives,
                          std::vector<CirclePoint> accumulation) {
  if (atoms.size() != derivatives.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "atoms and derivatives differ in length");
  }
  std::vector<Atom> list;
  list.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(derivatives[i] > 0.0) || !std::isfinite(derivatives[i])) {
      throw Error(ErrorCode::kSpectrumPoint, "atom with infinite or zero angular derivative");
    }
    list.push_back({atoms[i], 1.0 / derivatives[i]});
  }
  ClarkData d;
  d.alpha = alpha;
  d.measure = AtomicMeasure(std::move(list));
  d.derivatives.reserve(d.measure.size());
  for (const Atom& a : d.measure.atoms()) d.derivatives.push_back(1.0 / a.mass);
  // Keep the supplied derivatives exactly, matched by angle after sorting.
  {
    std::vector<std::size_t> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return atoms[a].theta() < atoms[b].theta();
    });
    for (std::size_t i = 0; i < order.size(); ++i) d.derivatives[i] = derivatives[order[i]];
  }
  d.accumulation = std::move(accumulation);
  d.constants = neighbor_constants(d.measure, d.accumulation);
  return d;
}

ClarkData clark_data(const InnerFunction& u, double alpha, const Arc& scan, double tol) {
  ScanOptions opts;
  opts.tol = tol;
  return clark_data(u, alpha, scan, opts);
}

ClarkData clark_data(const InnerFunction& u, double alpha, const Arc& scan,
                     const ScanOptions& opts) {
  const LevelScan s = scan_phase_levels(u, kTwoPi * alpha, kTwoPi, scan, opts);
  std::vector<double> der(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) der[i] = angular_derivative(u, s.points[i]);
  ClarkData d = make_clark_data(alpha, s.points, der, u.spectrum());
  for (std::size_t i : s.edge_uncertain) {
    const double th = s.points[i].theta();
    for (std::size_t j = 0; j < d.measure.size(); ++j) {
      if (d.measure[j].point.theta() == th) d.edge_uncertain.push_back(j);
    }
  }
  return d;
}

std::vector<Arc> partition_T_N(const InnerFunction& u, int N, const Arc& scan,
                               const ScanOptions& opts) {
  if (N < 2) throw Error(ErrorCode::kInvalidArgument, "partition needs N >= 2");
  const LevelScan s = scan_phase_levels(u, 0.0, kTwoPi / N, scan, opts);
  std::vector<Arc> arcs;
  const std::size_t n = s.points.size();
  if (n == 0) return arcs;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    arcs.emplace_back(s.points[i], s.offsets[i + 1] - s.offsets[i], true, false);
  }
  if (scan.is_full_circle() && n >= 1) {
    const double closing = kTwoPi - (s.offsets[n - 1] - s.offsets[0]);
    arcs.emplace_back(s.points[n - 1], closing, true, false);
  }
  return arcs;
}

FeichtingerReport feichtinger_check(const InnerFunction& u, int N, const Arc& scan,
                                    const ScanOptions& opts) {
  const std::vector<Arc> arcs = partition_T_N(u, N, scan, opts);
  FeichtingerReport r;
  r.N = N;
  r.arc_count = arcs.size();
  r.min_length_product = std::numeric_limits<double>::infinity();
  r.max_length_product = 0.0;
  constexpr int kSamples = 32;
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const Arc& J = arcs[j];
    const double d0 = angular_derivative(u, J.start());
    for (int s = 1; s <= kSamples; ++s) {
      const double t = J.start_angle() + J.length() * s / (kSamples + 1.0);
      const double d = angular_derivative(u, CirclePoint(t));
      const double ratio = std::max(d / d0, d0 / d);
      if (ratio > r.max_derivative_ratio) {
        r.max_derivative_ratio = ratio;
        r.ratio_witness = j;
      }
    }
    const double prod = J.length() * N * d0;
    r.min_length_product = std::min(r.min_length_product, prod);
    r.max_length_product = std::max(r.max_length_product, prod);
  }
  if (arcs.empty()) r.min_length_product = 0.0;
  r.ratio_pass = r.max_derivative_ratio <= r.c1;
  r.length_pass = !arcs.empty() && r.max_length_product <= r.c2 && r.min_length_product >= 1.0 / r.c2;
  r.pass = r.ratio_pass && r.length_pass;
  r.note = "N >= 20*pi*C is not verified: C has no closed form; pass/fail is empirical";
  return r;
}

ComparabilityReport comparability_check(const ClarkData& data, const ClarkData& data_alpha,
                                        std::span<const Arc> arcs) {
  ComparabilityReport r;
  r.min_alpha_ratio = std::numeric_limits<double>::infinity();
  r.min_lebesgue_ratio = std::numeric_limits<double>::infinity();
  for (const Arc& Q : arcs) {
    double s = 0.0;
    double sa = 0.0;
    std::size_t count = 0;
    std::size_t count_alpha = 0;
    for (const Atom& a : data.measure.atoms()) {
      if (Q.contains(a.point)) {
        s += a.mass;
        ++count;
      }
    }
    for (const Atom& a : data_alpha.measure.atoms()) {
      if (Q.contains(a.point)) {
        sa += a.mass;
        ++count_alpha;
      }
    }
    if (count == 0 || count_alpha == 0) {
      std::ostringstream os;
      os << "arc at " << Q.start_angle() << " of length " << Q.length()
         << " misses one of the measures";
      throw Error(ErrorCode::kEmptyArc, os.str());
    }
    ++r.arc_count;
    r.min_alpha_ratio = std::min(r.min_alpha_ratio, s / sa);
    r.max_alpha_ratio = std::max(r.max_alpha_ratio, s / sa);
    if (count >= 2) {
      ++r.lebesgue_arc_count;
      r.min_lebesgue_ratio = std::min(r.min_lebesgue_ratio, s / Q.length());
      r.max_lebesgue_ratio = std::max(r.max_lebesgue_ratio, s / Q.length());
    }
  }
  if (r.arc_count == 0) r.min_alpha_ratio = 0.0;
  if (r.lebesgue_arc_count == 0) r.min_lebesgue_ratio = 0.0;
  r.empirical_K = 1.0;
  if (r.arc_count > 0) {
    r.empirical_K = std::max({r.empirical_K, r.max_alpha_ratio, 1.0 / r.min_alpha_ratio});
  }
  if (r.lebesgue_arc_count > 0) {
    r.empirical_K = std::max({r.empirical_K, r.max_lebesgue_ratio, 1.0 / r.min_lebesgue_ratio});
  }
  return r;
}

}  // namespace clarklab
