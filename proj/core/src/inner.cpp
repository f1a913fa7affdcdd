#include "clarklab/inner.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

constexpr double kOnAtom = 1e-14;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const FiniteBlaschke& b) {
  for (const Complex& a : b.zeros) {
    if (!(std::abs(a) < 1.0) || !std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      std::ostringstream os;
      os << "Blaschke zero " << a << " is not inside the open disk";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  if (std::abs(std::abs(b.front) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "Blaschke front constant must be unimodular");
  }
}

void validate(const SingularAtomic& s) {
  for (const SingularAtom& a : s.atoms) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw Error(ErrorCode::kInvalidArgument, "singular weights must be positive");
    }
  }
}

Complex blaschke_factor(Complex a, Complex z) {
  const double r = std::abs(a);
  if (r == 0.0) return z;
  return (r / a) * (a - z) / (1.0 - std::conj(a) * z);
}

double blaschke_factor_phase(Complex a, double theta) {
  const double r = std::abs(a);
  if (r == 0.0) return theta;
  const double psi = std::arg(a);
  const double d = theta - psi;
  return theta + kPi - psi + 2.0 * std::atan2(r * std::sin(d), 1.0 - r * std::cos(d));
}

[[noreturn]] void throw_spectrum(double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "theta=" << theta << " lies on the spectrum";
  throw Error(ErrorCode::kSpectrumPoint, os.str());
}

}  // namespace

bool operator==(const Product& a, const Product& b) { return a.factors == b.factors; }

InnerFunction::InnerFunction(FiniteBlaschke b) : v_(std::move(b)) {
  validate(std::get<FiniteBlaschke>(v_));
}

InnerFunction::InnerFunction(SingularAtomic s) : v_(std::move(s)) {
  validate(std::get<SingularAtomic>(v_));
}

InnerFunction::InnerFunction(Product p) : v_(std::move(p)) {}

InnerFunction InnerFunction::monomial(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "monomial degree must be >= 1");
  return InnerFunction(FiniteBlaschke{std::vector<Complex>(static_cast<std::size_t>(k), 0.0), 1.0});
}

InnerFunction InnerFunction::blaschke(std::vector<Complex> zeros, Complex front) {
  return InnerFunction(FiniteBlaschke{std::move(zeros), front});
}

InnerFunction InnerFunction::singular(std::vector<SingularAtom> atoms) {
  return InnerFunction(SingularAtomic{std::move(atoms)});
}

InnerFunction InnerFunction::product(std::vector<InnerFunction> factors) {
  return InnerFunction(Product{std::move(factors)});
}

Complex InnerFunction::operator()(Complex z) const {
  return std::visit(
      Overloaded{
          [&](const FiniteBlaschke& b) {
            Complex p = b.front;
            for (const Complex& a : b.zeros) p *= blaschke_factor(a, z);
            return p;
          },
          [&](const SingularAtomic& s) {
            Complex e(0.0);
            for (const SingularAtom& a : s.atoms) {
              const Complex xi = a.point.z();
              if (std::abs(xi - z) < kOnAtom) throw_spectrum(a.point.theta());
              e += a.weight * (xi + z) / (xi - z);
            }
            return std::exp(-e);
          },
          [&](const Product& p) {
            Complex v(1.0);
            for (const InnerFunction& f : p.factors) v *= f(z);
            return v;
          },
      },
      v_);
}

std::vector<CirclePoint> InnerFunction::spectrum() const {
  std::vector<CirclePoint> out;
  std::visit(Overloaded{
                 [](const FiniteBlaschke&) {},
                 [&](const SingularAtomic& s) {
                   for (const SingularAtom& a : s.atoms) out.push_back(a.point);
                 },
                 [&](const Product& p) {
                   for (const InnerFunction& f : p.factors) {
                     const auto sub = f.spectrum();
                     out.insert(out.end(), sub.begin(), sub.end());
                   }
                 },
             },
             v_);
  return out;
}

std::size_t InnerFunction::blaschke_degree() const {
  return std::visit(Overloaded{
                        [](const FiniteBlaschke& b) { return b.zeros.size(); },
                        [](const SingularAtomic&) { return std::size_t{0}; },
                        [](const Product& p) {
                          std::size_t d = 0;
                          for (const InnerFunction& f : p.factors) d += f.blaschke_degree();
                          return d;
                        },
                    },
                    v_);
}

Complex eval(const InnerFunction& u, Complex z) { return u(z); }

double distance_to_spectrum(const InnerFunction& u, CirclePoint p) {
  double d = std::numeric_limits<double>::infinity();
  for (const CirclePoint& s : u.spectrum()) d = std::min(d, chord_distance(p, s));
  return d;
}

double boundary_phase_unchecked(const InnerFunction& u, double theta) {
  return std::visit(
      Overloaded{
          [&](const FiniteBlaschke& b) {
            double ph = std::arg(b.front);
            for (const Complex& a : b.zeros) ph += blaschke_factor_phase(a, theta);
            return ph;
          },
          [&](const SingularAtomic& s) {
            double ph = 0.0;
            for (const SingularAtom& a : s.atoms) {
              ph -= a.weight / std::tan(0.5 * (theta - a.point.theta()));
            }
            return ph;
          },
          [&](const Product& p) {
            double ph = 0.0;
            for (const InnerFunction& f : p.factors) ph += boundary_phase_unchecked(f, theta);
            return ph;
          },
      },
      u.variant());
}

double boundary_phase(const InnerFunction& u, double theta, double spectrum_radius) {
  if (distance_to_spectrum(u, CirclePoint(theta)) < spectrum_radius) throw_spectrum(theta);
  return boundary_phase_unchecked(u, theta);
}

namespace {
double derivative_sum(const InnerFunction& u, Complex zeta, double theta) {
  return std::visit(
      Overloaded{
          [&](const FiniteBlaschke& b) {
            double s = 0.0;
            for (const Complex& a : b.zeros) s += (1.0 - std::norm(a)) / std::norm(zeta - a);
            return s;
          },
          [&](const SingularAtomic& sa) {
            double s = 0.0;
            for (const SingularAtom& a : sa.atoms) {
              const double d2 = std::norm(zeta - a.point.z());
              if (std::sqrt(d2) < kOnAtom) throw_spectrum(theta);
              s += 2.0 * a.weight / d2;
            }
            return s;
          },
          [&](const Product& p) {
            double s = 0.0;
            for (const InnerFunction& f : p.factors) s += derivative_sum(f, zeta, theta);
            return s;
          },
      },
      u.variant());
}
}  // namespace

double angular_derivative(const InnerFunction& u, CirclePoint zeta) {
  const double s = derivative_sum(u, zeta.z(), zeta.theta());
  if (!(s <= kDerivativeCap)) return std::numeric_limits<double>::infinity();
  return s;
}

Complex PythagoreanPair::b(Complex z) const { return 0.5 * (1.0 + u(z)); }

Complex PythagoreanPair::a(Complex z) const { return gamma * 0.5 * (1.0 - u(z)); }

PythagoreanPair pythagorean_pair(const InnerFunction& u) {
  const Complex w = 1.0 - u(Complex(0.0));
  const double r = std::abs(w);
  if (r < 1e-14) throw Error(ErrorCode::kDegenerateSymbol, "u(0) = 1 has no Pythagorean mate");
  return PythagoreanPair{u, std::conj(w) / r};
}

double clark_identity_residual(const InnerFunction& u, double alpha, const AtomicMeasure& m,
                               Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Clark identity is evaluated inside the disk");
  }
  const Complex uz = u(z);
  const double lhs = (1.0 - std::norm(uz)) / std::norm(std::polar(1.0, kTwoPi * alpha) - uz);
  const double w = 1.0 - std::norm(z);
  double rhs = 0.0;
  for (const Atom& a : m.atoms()) rhs += a.mass * w / std::norm(a.point.z() - z);
  return std::abs(lhs - rhs);
}

}  // namespace clarklab
