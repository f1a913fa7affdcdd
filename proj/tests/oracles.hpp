#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical routines; inputs are plain vectors of points/masses.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline double coth(double x) { return 1.0 / std::tanh(x); }

/// Σ_{n∈ℤ} 2/(4π²n²+1) = coth(1/2), from the partial-fraction expansion of coth.
inline double exp_total_mass() { return coth(0.5); }

/// Kahan-summed Σ_{|n|≤M} f(n).
inline double lattice_sum(long long M, const std::function<double(long long)>& f) {
  double s = 0.0;
  double c = 0.0;
  for (long long k = M; k >= 1; --k) {
    for (long long n : {k, -k}) {
      const double y = f(n) - c;
      const double t = s + y;
      c = (t - s) - y;
      s = t;
    }
  }
  return s + f(0) - c;
}

/// Integral tail Σ_{|n|>M} 2/(4π²n²+1) < 2∫_M^∞ 2/(4π²x²) dx = 1/(π²M).
inline double exp_two_sided_tail(long long M) { return 1.0 / (pi * pi * static_cast<double>(M)); }

/// Exp atoms as complex numbers straight from (2nπi+1)/(2nπi-1).
inline Complex exp_atom(long long n) {
  const Complex w(0.0, 2.0 * pi * static_cast<double>(n));
  return (w + 1.0) / (w - 1.0);
}

inline double exp_mass(long long n) {
  const double x = 2.0 * pi * static_cast<double>(n);
  return 2.0 / (x * x + 1.0);
}

/// Largest singular value by full SVD.
inline double dense_norm(const Eigen::MatrixXcd& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

/// All singular values, descending.
inline Eigen::VectorXd dense_singular_values(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues();
}

/// A[n,m] = √σ_n√σ_m/(1 - conj(ζ_m)ζ_n), zero diagonal.
inline Eigen::MatrixXcd cauchy_matrix(const std::vector<Complex>& z, const std::vector<double>& s) {
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (r == c) continue;
      A(r, c) = std::sqrt(s[r] * s[c]) / (1.0 - std::conj(z[c]) * z[r]);
    }
  }
  return A;
}

/// Direct Tolsa ratio over every cyclic run of consecutive atoms (atoms must
/// be sorted by angle). O(N⁴).
inline double brute_tolsa(const std::vector<Complex>& z, const std::vector<double>& s) {
  const std::size_t n = z.size();
  double best = 0.0;
  auto eval = [&](const std::vector<bool>& in) {
    double norm2 = 0.0;
    double mq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (in[j]) mq += s[j];
      Complex acc(0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j && in[i]) acc += s[i] / (1.0 - std::conj(z[i]) * z[j]);
      }
      norm2 += s[j] * std::norm(acc);
    }
    best = std::max(best, std::sqrt(norm2 / mq));
  };
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<bool> in(n, false);
      for (std::size_t k = 0; k < len; ++k) in[(start + k) % n] = true;
      eval(in);
    }
  }
  return best;
}

/// |u'| at e^{iθ} from a central difference of arg u along the circle.
inline double fd_angular_derivative(const std::function<Complex(Complex)>& u, double theta,
                                    double h = 1e-6) {
  const Complex a = u(std::polar(1.0, theta + h));
  const Complex b = u(std::polar(1.0, theta - h));
  return std::arg(a / b) / (2.0 * h);
}

/// Roots of arg(u(e^{iθ}) e^{-iφ}) = 0 on [0, 2π) by dense sampling of the
/// sign of the wrapped argument plus bisection. Independent of any phase
/// branch bookkeeping; requires the samples to resolve every root.
inline std::vector<double> sampled_level_set(const std::function<Complex(Complex)>& u, double phi,
                                             std::size_t samples, double lo = 0.0,
                                             double hi = 2.0 * pi) {
  auto g = [&](double t) { return std::arg(u(std::polar(1.0, t)) * std::polar(1.0, -phi)); };
  std::vector<double> roots;
  double t0 = lo;
  double g0 = g(t0);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples);
    const double g1 = g(t1);
    // A genuine crossing goes from negative to nonnegative with a small jump;
    // the branch cut gives a jump near 2π.
    if (g0 < 0.0 && g1 >= 0.0 && g1 - g0 < pi) {
      double a = t0;
      double b = t1;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        if (g(m) < 0.0) a = m; else b = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    t0 = t1;
    g0 = g1;
  }
  return roots;
}

/// Gauss–Legendre-free 2D midpoint quadrature of (1/π)∬|f'|²P_δ1 dA over
/// the disk in plain polar coordinates with a graded radial mesh.
inline double dirichlet_midpoint(const std::function<Complex(Complex)>& fprime, int nr, int nt) {
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    // r = 1 - (1 - s)^4 grades points toward the boundary.
    const double s0 = static_cast<double>(i) / nr;
    const double s1 = static_cast<double>(i + 1) / nr;
    const double sm = 0.5 * (s0 + s1);
    const double r = 1.0 - std::pow(1.0 - sm, 4);
    const double dr = 4.0 * std::pow(1.0 - sm, 3) * (s1 - s0);
    for (int k = 0; k < nt; ++k) {
      const double t = 2.0 * pi * (k + 0.5) / nt;
      const Complex z = std::polar(r, t);
      const double P = (1.0 - r * r) / std::norm(z - 1.0);
      total += std::norm(fprime(z)) * P * r * dr * (2.0 * pi / nt);
    }
  }
  return total / pi;
}

// Hand-rolled generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

  /// Distinct angles in [0, 2π) at least `sep` apart (cyclically).
  std::vector<double> angles(std::size_t n, double sep = 1e-3) {
    std::vector<double> out;
    while (out.size() < n) {
      const double t = uniform(0.0, 2.0 * pi);
      bool ok = true;
      for (double s : out) {
        double d = std::fmod(std::abs(t - s), 2.0 * pi);
        d = std::min(d, 2.0 * pi - d);
        ok = ok && d > sep;
      }
      if (ok) out.push_back(t);
    }
    return out;
  }

  std::vector<double> masses(std::size_t n, double lo = 0.01, double hi = 2.0) {
    std::vector<double> out(n);
    for (double& m : out) m = uniform(lo, hi);
    return out;
  }

  Complex disk_point(double rmax = 0.95) {
    const double r = rmax * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * pi));
  }

  std::vector<Complex> blaschke_zeros(std::size_t n, double rmax = 0.9) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(disk_point(rmax));
    return out;
  }
};

/// Π (|a|/a)(a - z)/(1 - ā z), with z for a = 0.
inline Complex blaschke(const std::vector<Complex>& zeros, Complex z) {
  Complex p(1.0);
  for (const Complex& a : zeros) {
    if (a == Complex(0.0)) {
      p *= z;
    } else {
      p *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
    }
  }
  return p;
}

inline Complex exp_inner(Complex z) { return std::exp((z + 1.0) / (z - 1.0)); }

}  // namespace oracle
