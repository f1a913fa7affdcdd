#include "clarklab/bessonov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "clarklab/error.hpp"
#include "clarklab/perturbation.hpp"

namespace clarklab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kPassWithFlags:
      return "pass-with-flags";
    case Verdict::kFail:
      return "fail";
  }
  return "unknown";
}

namespace {

double nearest_accumulation(CirclePoint p, std::span<const CirclePoint> acc) {
  double d = std::numeric_limits<double>::infinity();
  for (const CirclePoint& q : acc) d = std::min(d, chord_distance(p, q));
  return d;
}

/// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

BessonovReport bessonov_check(const AtomicMeasure& m, std::span<const CirclePoint> accumulation,
                              const BessonovTolerances& tol) {
  BessonovReport r;
  const std::size_t n = m.size();
  r.atom_count = n;
  const bool declared = !accumulation.empty();

  if (n < 2) {
    r.support.note = n == 0 ? "empty measure" : "single atom: finite support";
    r.isolation.note = "no pairs of atoms";
    r.min_gap = std::numeric_limits<double>::infinity();
    if (n == 0) {
      r.neighbors = {false, false, "no atoms"};
    } else {
      r.neighbors = {true, false, "single atom is its own neighbour"};
    }
    r.constants = {true, true, "neighbour constants undefined for fewer than two atoms"};
    r.cauchy.note = "C_mu 1 vanishes on a single atom";
  } else {
    // (i)
    r.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double g = chord_distance(m[k].point, m[m.next(k)].point);
      r.gap_sum += g;
      if (g > r.max_gap) {
        r.max_gap = g;
        r.max_gap_witness = k;
      }
      if (g < r.min_gap) {
        r.min_gap = g;
        r.min_gap_witness = k;
      }
    }
    if (declared) {
      r.support = {true, true, "truncation: gap statistics only, null support not decidable"};
    } else {
      r.support = {true, false, "finite support"};
    }

    // (ii)
    r.isolation.ok = r.min_gap > 0.0;
    if (!r.isolation.ok) r.isolation.note = "coincident atoms";

    // (iii)
    for (std::size_t k = 0; k < n; ++k) {
      if (gap_straddles(m, k, accumulation)) r.straddling_gaps.push_back(k);
    }
    if (!r.straddling_gaps.empty()) {
      r.neighbors = {true, true, "truncation edge atoms next to accumulation points"};
    }

    // (iv)
    const auto raw = neighbor_constants(m);
    const auto interior = neighbor_constants(m, accumulation);
    if (raw) {
      r.raw_A = raw->A;
      r.raw_B = raw->B;
    }
    if (interior) {
      r.A = interior->A;
      r.B = interior->B;
      r.a_witness = interior->a_witness;
      r.b_witness = interior->b_witness;
    }
    if (!interior || !(r.A > 0.0) || !std::isfinite(r.B)) {
      r.constants = {false, false, "no positive neighbour constants"};
    } else {
      if (r.B / r.A > tol.spread_warning) {
        r.constants.flagged = true;
        r.constants.note = "B/A beyond conditioning threshold";
      }
      if (declared) {
        std::vector<double> lx;
        std::vector<double> ly;
        for (std::size_t k = 0; k < n; ++k) {
          const bool plus_ok = !gap_straddles(m, k, accumulation);
          const bool minus_ok = !gap_straddles(m, m.prev(k), accumulation);
          if (!plus_ok || !minus_ok) continue;
          const NeighborGaps g = m.neighbor_gaps(k);
          const double d = nearest_accumulation(m[k].point, accumulation);
          if (!(d > 0.0)) continue;
          lx.push_back(std::log(d));
          ly.push_back(std::log(m[k].mass / std::max(g.plus, g.minus)));
        }
        if (lx.size() >= tol.min_slope_atoms) {
          r.slope_tested = true;
          r.decay_slope = slope(lx, ly);
          if (std::abs(r.decay_slope) > tol.slope_tol) {
            std::ostringstream os;
            os << "mass/gap scales like dist^" << r.decay_slope
               << " toward the accumulation set; A degenerates (witness atom " << r.a_witness << ")";
            r.constants.ok = false;
            r.constants.note = os.str();
          }
        }
      }
    }

    // (v)
    std::vector<double> exclusion(accumulation.size(), 0.0);
    for (std::size_t k : r.straddling_gaps) {
      const double g = chord_distance(m[k].point, m[m.next(k)].point);
      for (std::size_t j = 0; j < accumulation.size(); ++j) {
        const double d = ccw_distance(m[k].point, accumulation[j]);
        if (d > 0.0 && d < ccw_distance(m[k].point, m[m.next(k)].point)) {
          exclusion[j] = std::max(exclusion[j], 2.0 * g);
        }
      }
    }
    const std::vector<Complex> pts = m.points();
    const std::vector<double> mass = m.masses();
    r.sup_c1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      bool skip = false;
      for (std::size_t j = 0; j < accumulation.size(); ++j) {
        if (chord_distance(m[k].point, accumulation[j]) < exclusion[j]) skip = true;
      }
      if (skip) continue;
      Complex acc(0.0);
      for (std::size_t q = 0; q < n; ++q) {
        if (q != k) acc += mass[q] / (1.0 - std::conj(pts[q]) * pts[k]);
      }
      ++r.c1_atoms;
      const double v = std::abs(acc);
      if (v > r.sup_c1 || !std::isfinite(v)) {
        r.sup_c1 = v;
        r.c1_witness = k;
      }
    }
    if (!(r.sup_c1 <= tol.c1_threshold)) {
      r.cauchy = {false, false, "sup |C_mu 1| beyond diagnostic threshold"};
    } else if (declared) {
      r.cauchy = {true, true, "atoms within twice the edge gap of accumulation points excluded"};
    }
  }

  const ConditionRecord* all[] = {&r.support, &r.isolation, &r.neighbors, &r.constants, &r.cauchy};
  bool fail = false;
  bool flag = false;
  for (const ConditionRecord* c : all) {
    fail = fail || !c->ok;
    flag = flag || c->flagged;
  }
  r.verdict = fail ? Verdict::kFail : (flag ? Verdict::kPassWithFlags : Verdict::kPass);
  return r;
}

AdmissibilityReport perturbed_admissibility(const ClarkData& original, const AtomicMeasure& perturbed) {
  const AtomicMeasure& m = original.measure;
  const std::size_t n = m.size();
  if (perturbed.size() != n) {
    std::ostringstream os;
    os << "original has " << n << " atoms, perturbed has " << perturbed.size();
    throw Error(ErrorCode::kSupportMismatch, os.str());
  }
  AdmissibilityReport r;
  if (n == 0) {
    r.pass = true;
    return r;
  }
  // Sorting can rotate indices by one when an atom crosses θ = 0.
  int best_shift = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int shift : {0, -1, 1}) {
    double cost = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + n + static_cast<std::size_t>(shift + static_cast<int>(n))) % n;
      cost = std::max(cost, chord_distance(m[k].point, perturbed[j].point));
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = shift;
    }
  }
  r.alpha.resize(n);
  r.pairing.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + n + static_cast<std::size_t>(best_shift + static_cast<int>(n))) % n;
    r.pairing[k] = j;
    const double s = m[k].mass;
    const double a = std::max(chord_distance(m[k].point, perturbed[j].point) / s,
                              std::abs(perturbed[j].mass - s) / s);
    r.alpha[k] = a;
    if (a > r.max_alpha) {
      r.max_alpha = a;
      r.witness = k;
    }
  }
  if (original.constants) {
    r.cap = admissible_alpha_bound(original.constants->A, original.constants->B);
    r.pass = r.max_alpha <= r.cap * (1.0 + 1e-12);
  }
  return r;
}

}  // namespace clarklab
