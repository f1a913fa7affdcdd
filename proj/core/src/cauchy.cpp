#include "clarklab/cauchy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

void check_length(const CauchySection& s, std::size_t n) {
  if (n != s.size()) {
    std::ostringstream os;
    os << "vector of length " << n << " applied to a section of size " << s.size();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

std::vector<Complex> adjoint_apply(const CauchySection& s, std::span<const Complex> y) {
  // A is Hermitian, but the adjoint is computed independently so power
  // iteration does not rely on it.
  const std::size_t n = s.size();
  std::vector<Complex> out(n);
  if (s.dense()) {
    Eigen::Map<const RowMatrix> A(s.matrix().data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(n));
    Eigen::Map<const CVector> yv(y.data(), static_cast<Eigen::Index>(n));
    Eigen::Map<CVector>(out.data(), static_cast<Eigen::Index>(n)) = A.adjoint() * yv;
    return out;
  }
  for (std::size_t m = 0; m < n; ++m) {
    Complex acc(0.0);
    for (std::size_t k = 0; k < n; ++k) acc += std::conj(s.entry(k, m)) * y[k];
    out[m] = acc;
  }
  return out;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return s;
}

}  // namespace

CauchySection::CauchySection(const AtomicMeasure& m) : measure_(m) {
  points_ = m.points();
  masses_ = m.masses();
  sqrt_masses_.resize(masses_.size());
  std::transform(masses_.begin(), masses_.end(), sqrt_masses_.begin(),
                 [](double x) { return std::sqrt(x); });
  const std::size_t n = points_.size();
  if (n <= kDenseSectionLimit) {
    // Filled from kernel() directly: entry() reads matrix_ once it is non-empty.
    matrix_.assign(n * n, Complex(0.0));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) matrix_[r * n + c] = sqrt_masses_[r] * sqrt_masses_[c] * kernel(r, c);
    }
  }
}

Complex CauchySection::kernel(std::size_t n, std::size_t m) const {
  if (n == m) return Complex(0.0);
  return 1.0 / (1.0 - std::conj(points_[m]) * points_[n]);
}

Complex CauchySection::entry(std::size_t n, std::size_t m) const {
  if (!matrix_.empty()) return matrix_[n * points_.size() + m];
  return sqrt_masses_[n] * sqrt_masses_[m] * kernel(n, m);
}

std::vector<Complex> CauchySection::weighted_apply(std::span<const Complex> x) const {
  const std::size_t n = size();
  if (x.size() != n) {
    std::ostringstream os;
    os << "vector of length " << x.size() << " applied to a section of size " << n;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  std::vector<Complex> out(n);
  if (dense()) {
    Eigen::Map<const RowMatrix> A(matrix_.data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(n));
    Eigen::Map<const CVector> xv(x.data(), static_cast<Eigen::Index>(n));
    Eigen::Map<CVector>(out.data(), static_cast<Eigen::Index>(n)) = A * xv;
    return out;
  }
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc(0.0);
    for (std::size_t c = 0; c < n; ++c) acc += entry(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

Complex cauchy_of_one(const CauchySection& s, std::size_t n) {
  if (n >= s.size()) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  Complex acc(0.0);
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (m != n) acc += s.masses()[m] * s.kernel(n, m);
  }
  return acc;
}

std::vector<Complex> apply(const CauchySection& s, std::span<const Complex> f) {
  check_length(s, f.size());
  const std::size_t n = s.size();
  std::vector<Complex> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc(0.0);
    for (std::size_t m = 0; m < n; ++m) {
      if (m != r) acc += f[m] * s.masses()[m] * s.kernel(r, m);
    }
    out[r] = acc;
  }
  return out;
}

double l2_norm(const CauchySection& s, std::span<const Complex> f) {
  check_length(s, f.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) acc += s.masses()[n] * std::norm(f[n]);
  return std::sqrt(acc);
}

SectionNorm section_norm(const CauchySection& s, const PowerConfig& cfg) {
  const std::size_t n = s.size();
  SectionNorm out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  std::vector<Complex> x(n, Complex(1.0 / std::sqrt(static_cast<double>(n))));
  std::mt19937_64 rng(cfg.restart_seed);
  std::normal_distribution<double> gauss;
  double q_prev = -1.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const std::vector<Complex> y = s.weighted_apply(x);
    const double q = norm2(y);  // Rayleigh quotient of A*A at unit x
    out.iterations = it;
    if (!(q > 1e-300) && out.restarts < 3) {
      // Seed orthogonal to the dominant space (or A = 0); retry from a random vector.
      ++out.restarts;
      for (Complex& c : x) c = Complex(gauss(rng), gauss(rng));
      const double nx = std::sqrt(norm2(x));
      for (Complex& c : x) c /= nx;
      q_prev = -1.0;
      continue;
    }
    std::vector<Complex> z = adjoint_apply(s, y);
    const double nz = std::sqrt(norm2(z));
    out.value = std::sqrt(q);
    if (nz == 0.0) {
      out.converged = true;
      break;
    }
    if (q_prev >= 0.0 && std::abs(q - q_prev) <= cfg.rel_tol * q) {
      out.converged = true;
      break;
    }
    q_prev = q;
    for (std::size_t k = 0; k < n; ++k) x[k] = z[k] / nz;
  }
  return out;
}

OperatorNormEstimate operator_norm(std::span<const std::size_t> sizes,
                                   const std::function<AtomicMeasure(std::size_t)>& source,
                                   const PowerConfig& cfg) {
  OperatorNormEstimate est;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "section sizes must increase");
    }
    const CauchySection s(source(sizes[i]));
    const SectionNorm sn = section_norm(s, cfg);
    est.sizes.push_back(sizes[i]);
    est.lower_bounds.push_back(sn.value);
    est.converged.push_back(sn.converged);
    est.iterations.push_back(sn.iterations);
    if (i > 0 && sn.value < est.lower_bounds[i - 1] - 1e-9) est.monotone = false;
  }
  const std::size_t k = est.lower_bounds.size();
  if (k >= 2) {
    est.last_growth = (est.lower_bounds[k - 1] - est.lower_bounds[k - 2]) / est.lower_bounds[k - 2];
    est.plateau = est.last_growth < est.plateau_tol;
  }
  return est;
}

TolsaReport tolsa_scan(const CauchySection& s) {
  const std::size_t n = s.size();
  if (n < 2) throw Error(ErrorCode::kNotEnoughAtoms, "Tolsa scan needs at least two atoms");
  const auto N = static_cast<Eigen::Index>(n);

  // W[j,i] = √σ_j K(j,i) σ_i, so ‖C χ_Q‖² = χ_Qᵀ Re(W*W) χ_Q.
  Eigen::MatrixXcd W(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const double sj = std::sqrt(s.masses()[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < N; ++i) {
      W(j, i) = sj * s.kernel(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) *
                s.masses()[static_cast<std::size_t>(i)];
    }
  }
  const Eigen::MatrixXd G = (W.adjoint() * W).real();
  W.resize(0, 0);

  // P[a][b] = Σ_{i<a, k<b} G(i,k); R[a] = Σ_{i<a} Σ_k G(i,k).
  const std::size_t stride = n + 1;
  std::vector<long double> P(stride * stride, 0.0L);
  for (std::size_t a = 1; a <= n; ++a) {
    long double row = 0.0L;
    for (std::size_t b = 1; b <= n; ++b) {
      row += G(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(b - 1));
      P[a * stride + b] = P[(a - 1) * stride + b] + row;
    }
  }
  auto block = [&](std::size_t lo, std::size_t hi) {  // atoms lo..hi-1
    return P[hi * stride + hi] - P[lo * stride + hi] - P[hi * stride + lo] + P[lo * stride + lo];
  };
  auto rows = [&](std::size_t lo, std::size_t hi) {
    return P[hi * stride + n] - P[lo * stride + n];
  };
  const long double total = P[n * stride + n];

  std::vector<long double> mass_prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) mass_prefix[i + 1] = mass_prefix[i] + s.masses()[i];

  TolsaReport r;
  r.max_ratio = -1.0;
  auto consider = [&](long double c2, long double mq, std::size_t start, std::size_t count) {
    ++r.arc_count;
    const double ratio = std::sqrt(static_cast<double>(std::max(c2, 0.0L)) / static_cast<double>(mq));
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.witness_start = start;
      r.witness_count = count;
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t count = 1; count < n; ++count) {
      const std::size_t end = start + count;
      if (end <= n) {
        consider(block(start, end), mass_prefix[end] - mass_prefix[start], start, count);
      } else {
        // Wrapping run: complement of the contiguous block [end - n, start).
        const std::size_t lo = end - n;
        const long double c2 = total - 2.0L * rows(lo, start) + block(lo, start);
        const long double mq = mass_prefix[n] - (mass_prefix[start] - mass_prefix[lo]);
        consider(c2, mq, start, count);
      }
    }
  }
  consider(total, mass_prefix[n], 0, n);

  if (r.witness_count == n) {
    r.witness_arc = Arc::full_circle();
  } else {
    const AtomicMeasure& m = s.measure();
    const std::size_t first = r.witness_start;
    const std::size_t last = (first + r.witness_count - 1) % n;
    const CirclePoint a = m[m.prev(first)].point;
    const CirclePoint b = m[first].point;
    const CirclePoint c = m[last].point;
    const CirclePoint d = m[m.next(last)].point;
    const CirclePoint left = a.rotated(0.5 * ccw_distance(a, b));
    const CirclePoint right = c.rotated(0.5 * ccw_distance(c, d));
    r.witness_arc = Arc::between(left, right, true, false);
  }
  return r;
}

TailIntegral tail_integral_check(const CauchySection& s, const Arc& Q, std::size_t i) {
  if (i >= s.size()) throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  const CirclePoint zi = s.measure()[i].point;
  if (!Q.is_full_circle()) {
    const double off = ccw_distance(Q.start(), zi);
    const bool on_edge = off < kAngleTolerance || off > kTwoPi - kAngleTolerance ||
                         std::abs(off - Q.length()) < kAngleTolerance;
    if (on_edge) throw Error(ErrorCode::kBoundaryAtom, "atom lies on the arc boundary");
    if (off > Q.length()) throw Error(ErrorCode::kInvalidArgument, "atom lies outside the arc");
  }
  TailIntegral t;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i || Q.contains(s.measure()[j].point)) continue;
    t.lhs += s.masses()[j] / std::norm(s.points()[j] - s.points()[i]);
  }
  const double dist = Q.is_full_circle() ? 0.0 : Q.distance_to_complement(zi);
  t.rhs_scale = dist > 0.0 ? 1.0 / dist : 0.0;
  t.ratio = t.rhs_scale > 0.0 ? t.lhs / t.rhs_scale : 0.0;
  return t;
}

long long exp_atom_index(Complex zeta) {
  const Complex w = 2.0 / (zeta - 1.0);  // equals 2nπi - 1 on the family
  const double nr = w.imag() / kTwoPi;
  const double n = std::round(nr);
  const double scale = std::max(1.0, std::abs(w));
  if (!std::isfinite(nr) || std::abs(w.real() + 1.0) > 1e-6 * scale ||
      std::abs(nr - n) > 1e-6 * std::max(1.0, std::abs(n))) {
    std::ostringstream os;
    os.precision(17);
    os << "point " << zeta << " is not of the form (2n pi i + 1)/(2n pi i - 1)";
    throw Error(ErrorCode::kWrongFamily, os.str());
  }
  return static_cast<long long>(n);
}

std::vector<Complex> hilbert_route(const CauchySection& s, std::span<const Complex> f) {
  check_length(s, f.size());
  const std::size_t n = s.size();
  std::vector<long long> idx(n);
  for (std::size_t k = 0; k < n; ++k) {
    idx[k] = exp_atom_index(s.points()[k]);
    const double nn = static_cast<double>(idx[k]);
    const double expected = 2.0 / (4.0 * nn * nn * kPi * kPi + 1.0);
    if (std::abs(s.masses()[k] - expected) > 1e-8 * expected) {
      throw Error(ErrorCode::kWrongFamily, "masses are not 2/(4 n^2 pi^2 + 1)");
    }
  }
  const Complex I(0.0, 1.0);
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = (kTwoPi * static_cast<double>(idx[k]) * I + 1.0) * f[k] * s.masses()[k];
  }
  std::vector<Complex> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    Complex acc(0.0);
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a) acc += x[b] / static_cast<double>(idx[a] - idx[b]);
    }
    out[a] = (kTwoPi * static_cast<double>(idx[a]) * I - 1.0) / (2.0 * kTwoPi * I) * acc;
  }
  return out;
}

}  // namespace clarklab
