#include "clarklab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

constexpr double kOnAtom = 1e-14;
constexpr double kSupportAngleTol = 1e-9;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
  GaussRule g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double pm = std::legendre(un - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x);
    const double pm = std::legendre(un - 1, x);
    dp = n * (x * p - pm) / (x * x - 1.0);
    g.nodes[static_cast<std::size_t>(i)] = x;
    g.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

/// Polynomial extrapolation of (x_i, y_i) to x = 0.
double neville_at_zero(const std::vector<double>& x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      y[i] = (xj * y[i] - xi * y[i + 1]) / (xj - xi);
    }
  }
  return y[0];
}

void check_support(const InnerFunction& u, const AtomicMeasure& m, double tol) {
  for (std::size_t n = 0; n < m.size(); ++n) {
    const Complex val = u(m[n].point.z());
    if (std::abs(val - 1.0) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "atom " << n << " at theta=" << m[n].point.theta() << " has |u - 1| = "
         << std::abs(val - 1.0);
      throw Error(ErrorCode::kSupportMismatch, os.str());
    }
  }
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) return (a == b) ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / scale;
}

}  // namespace

double potential(const AtomicMeasure& m, Complex z) {
  double s = 0.0;
  for (const Atom& a : m.atoms()) {
    const double d2 = std::norm(z - a.point.z());
    if (d2 < kOnAtom * kOnAtom) return std::numeric_limits<double>::infinity();
    s += a.mass / d2;
  }
  return s;
}

double poisson(const AtomicMeasure& m, Complex z) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw Error(ErrorCode::kInvalidArgument, "Poisson integral needs |z| < 1");
  return (1.0 - r2) * potential(m, z);
}

PotentialReport sup_inf_scan(const InnerFunction& u, const AtomicMeasure& m,
                             const ScanConfig& cfg) {
  check_support(u, m, cfg.support_tol);
  PotentialReport r;
  r.sup_estimate = -std::numeric_limits<double>::infinity();
  r.inf_estimate = std::numeric_limits<double>::infinity();
  r.interior_sup = -std::numeric_limits<double>::infinity();

  auto visit = [&](Complex z) {
    const double v = std::norm(1.0 - u(z)) * potential(m, z);
    ++r.evaluations;
    if (v > r.interior_sup) r.interior_sup = v;
    if (v > r.sup_estimate) {
      r.sup_estimate = v;
      r.sup_witness = z;
    }
    if (v < r.inf_estimate) {
      r.inf_estimate = v;
      r.inf_witness = z;
    }
  };

  std::size_t count = cfg.base_angular;
  for (int j = 1; j <= cfg.grid_depth; ++j) {
    const double rad = 1.0 - std::ldexp(1.0, -j);
    const std::size_t k = std::min(count, cfg.max_angular);
    for (std::size_t i = 0; i < k; ++i) visit(std::polar(rad, kTwoPi * (i + 0.5) / k));
    count *= 2;
  }

  std::vector<CirclePoint> centers;
  for (const Atom& a : m.atoms()) centers.push_back(a.point);
  const std::vector<CirclePoint> spec = u.spectrum();
  centers.insert(centers.end(), spec.begin(), spec.end());
  const int dirs = std::max(1, cfg.cluster_directions);
  for (const CirclePoint& c : centers) {
    const Complex p = c.z();
    for (int kk = 1; kk <= cfg.cluster_depth; ++kk) {
      const double d = std::ldexp(1.0, -kk);
      for (int q = 0; q < dirs; ++q) {
        // Directions strictly inside the inward half-plane at p.
        const double phi = -0.5 * kPi + kPi * (q + 0.5) / dirs;
        const Complex z = p * (1.0 - d * std::polar(1.0, phi));
        if (std::abs(z) < 1.0) visit(z);
      }
    }
  }

  r.atom_limits.reserve(m.size());
  r.boundary_sup = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < m.size(); ++n) {
    const double d = angular_derivative(u, m[n].point);
    const double v = d * d * m[n].mass;
    r.atom_limits.push_back(v);
    r.boundary_sup = std::max(r.boundary_sup, v);
    if (v > r.sup_estimate) {
      r.sup_estimate = v;
      r.sup_witness = m[n].point.z();
    }
    if (v < r.inf_estimate) {
      r.inf_estimate = v;
      r.inf_witness = m[n].point.z();
    }
  }
  if (m.empty()) r.boundary_sup = 0.0;

  r.spectrum_points = spec;
  r.spectrum_points.insert(r.spectrum_points.end(), cfg.extra_boundary_points.begin(),
                           cfg.extra_boundary_points.end());
  for (const CirclePoint& p : r.spectrum_points) r.spectrum_values.push_back(potential(m, p.z()));

  std::ostringstream g;
  g << "radial 1-2^-j j=1.." << cfg.grid_depth << ", angular " << cfg.base_angular
    << " doubling to " << cfg.max_angular << ", clusters 2^-k k=1.." << cfg.cluster_depth << " x "
    << dirs << " around " << centers.size() << " points";
  r.grid = g.str();
  return r;
}

PotentialReport compare_truncations(const PotentialReport& coarse, PotentialReport fine,
                                    double rel_tol) {
  double change = std::max(relative_change(coarse.sup_estimate, fine.sup_estimate),
                           relative_change(coarse.inf_estimate, fine.inf_estimate));
  const std::size_t k = std::min(coarse.spectrum_values.size(), fine.spectrum_values.size());
  for (std::size_t i = 0; i < k; ++i) {
    change = std::max(change, relative_change(coarse.spectrum_values[i], fine.spectrum_values[i]));
  }
  fine.truncation_change = change;
  fine.converged = change < rel_tol;
  return fine;
}

Lemma61Result lemma61_criterion(const AtomicMeasure& m) {
  if (m.size() < 2) throw Error(ErrorCode::kNotEnoughAtoms, "criterion needs at least two atoms");
  const std::vector<Complex> pts = m.points();
  const std::vector<double> mass = m.masses();
  Lemma61Result best{-1.0, 0};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    double s = 0.0;
    for (std::size_t n = 0; n < pts.size(); ++n) {
      if (n != j) s += mass[n] / std::norm(pts[n] - pts[j]);
    }
    if (s > best.value) best = {s, j};
  }
  return best;
}

MassRatioResult mass_ratio_check(const ClarkData& clark, const AtomicMeasure& m) {
  if (clark.measure.size() != m.size()) {
    throw Error(ErrorCode::kSupportMismatch, "measure and Clark atoms differ in count");
  }
  MassRatioResult r{std::numeric_limits<double>::infinity(), 0.0, 1.0, 0, 0};
  for (std::size_t n = 0; n < m.size(); ++n) {
    if (arc_distance(clark.measure[n].point, m[n].point) > kSupportAngleTol) {
      std::ostringstream os;
      os << "atom " << n << " is not a Clark atom";
      throw Error(ErrorCode::kSupportMismatch, os.str());
    }
    const double d = clark.derivatives[n];
    const double p = m[n].mass * d * d;
    if (p < r.min) {
      r.min = p;
      r.min_witness = n;
    }
    if (p > r.max) {
      r.max = p;
      r.max_witness = n;
    }
  }
  if (m.empty()) r.min = 0.0;
  r.C = m.empty() ? 1.0 : std::max(r.max, 1.0 / r.min);
  return r;
}

RadialLimitResult radial_limit_check(const InnerFunction& u, const AtomicMeasure& m,
                                     std::size_t k, std::vector<double> radii) {
  if (k >= m.size()) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  if (radii.empty()) {
    for (int j = 4; j <= 8; ++j) radii.push_back(1.0 - std::pow(10.0, -j));
  }
  RadialLimitResult r;
  r.radii = radii;
  const Complex zeta = m[k].point.z();
  std::vector<double> h;
  for (double rad : radii) {
    if (!(rad > 0.0 && rad < 1.0)) throw Error(ErrorCode::kInvalidArgument, "radii must lie in (0, 1)");
    const Complex z = rad * zeta;
    r.values.push_back(std::norm(1.0 - u(z)) * potential(m, z));
    h.push_back(1.0 - rad);
  }
  r.limit = neville_at_zero(h, r.values);
  const double d = angular_derivative(u, m[k].point);
  r.target = d * d * m[k].mass;
  r.rel_error = std::abs(r.limit - r.target) / std::abs(r.target);
  return r;
}

KernelNorms kernel_norms(const InnerFunction& u, const AtomicMeasure& m, Complex w) {
  const double w2 = std::norm(w);
  if (!(w2 < 1.0)) throw Error(ErrorCode::kInvalidArgument, "kernel norms need |w| < 1");
  KernelNorms k;
  k.dmu_norm_sq = (1.0 + (w2 == 0.0 ? 0.0 : w2 * potential(m, w))) / (1.0 - w2);
  const PythagoreanPair pair = pythagorean_pair(u);
  const Complex a = pair.a(w);
  if (std::abs(a) < 1e-15) throw Error(ErrorCode::kMateZero, "a(w) = 0");
  k.hb_norm_sq = (1.0 + std::norm(pair.b(w) / a)) / (1.0 - w2);
  return k;
}

QuadResult dirichlet_quadrature(const AtomicMeasure& m,
                                const std::function<Complex(Complex)>& derivative,
                                const QuadConfig& cfg) {
  auto evaluate = [&](std::size_t angular, int order) {
    const GaussRule g = gauss_legendre(order);
    const GaussRule ga = gauss_legendre(static_cast<int>(angular));
    long double total = 0.0L;
    for (const Atom& atom : m.atoms()) {
      const Complex zeta = atom.point.z();
      long double radial = 0.0L;
      for (int k = 1; k <= cfg.panels; ++k) {
        const double a = 1.0 - std::ldexp(1.0, 1 - k);
        const double b = 1.0 - std::ldexp(1.0, -k);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
          const double r = mid + half * g.nodes[q];
          // The Poisson kernel at radius r has width about 1 - r around τ = 0;
          // panels [0, h/8], [h/8, h/4], ... up to π resolve it at every scale.
          const double h = 1.0 - r;
          std::vector<double> breaks{0.0};
          for (double t = h / 8.0; t < kPi; t *= 2.0) breaks.push_back(t);
          breaks.push_back(kPi);
          double mean = 0.0;
          for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            const double ph = 0.5 * (breaks[p + 1] - breaks[p]);
            const double pm = 0.5 * (breaks[p + 1] + breaks[p]);
            for (std::size_t i = 0; i < ga.nodes.size(); ++i) {
              const double tau = pm + ph * ga.nodes[i];
              const double sn = std::sin(0.5 * tau);
              const double kernel = h * (1.0 + r) / (h * h + 4.0 * r * sn * sn);
              const double both = std::norm(derivative(r * zeta * std::polar(1.0, tau))) +
                                  std::norm(derivative(r * zeta * std::polar(1.0, -tau)));
              mean += ph * ga.weights[i] * kernel * both;
            }
          }
          mean /= kTwoPi;
          radial += static_cast<long double>(half * g.weights[q] * r * mean);
        }
      }
      total += static_cast<long double>(atom.mass) * radial;
    }
    return static_cast<double>(2.0L * total);
  };

  QuadResult res;
  std::size_t angular = cfg.angular;
  int order = cfg.order;
  double prev = evaluate(angular, order);
  for (int level = 1; level <= cfg.max_levels; ++level) {
    angular *= 2;
    order *= 2;
    const double cur = evaluate(angular, order);
    res.value = cur;
    res.error_estimate = std::abs(cur - prev);
    res.levels = level;
    if (res.error_estimate <= cfg.rel_tol * std::max(1.0, std::abs(cur))) return res;
    prev = cur;
  }
  std::ostringstream os;
  os << "grid doubling did not settle: last change " << res.error_estimate;
  throw Error(ErrorCode::kQuadratureNotConverged, os.str());
}

}  // namespace clarklab
