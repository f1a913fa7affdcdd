#include "clarklab/families.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "clarklab/error.hpp"
#include "clarklab/perturbation.hpp"
#include "clarklab/potentials.hpp"

namespace clarklab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidInput, "cannot parse " + std::string(what) + " from '" +
                                              std::string(s) + "'");
  }
  return v;
}

DivergenceReport summarize(std::string family, std::vector<DivergenceRow> rows) {
  DivergenceReport r;
  r.family = std::move(family);
  r.rows = std::move(rows);
  r.strictly_increasing = r.rows.size() >= 2;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (!(r.rows[i].lemma61 > r.rows[i - 1].lemma61)) r.strictly_increasing = false;
  }
  if (!r.rows.empty() && r.rows.front().lemma61 > 0.0) {
    r.growth = r.rows.back().lemma61 / r.rows.front().lemma61;
    for (const DivergenceRow& row : r.rows) {
      r.max_relative_change =
          std::max(r.max_relative_change, std::abs(row.lemma61 / r.rows.front().lemma61 - 1.0));
    }
  }
  return r;
}

DivergenceRow divergence_row(int K, const AtomicMeasure& mu) {
  DivergenceRow row;
  row.K = K;
  row.atom_count = mu.size();
  const Lemma61Result l = lemma61_criterion(mu);
  row.lemma61 = l.value;
  row.witness = l.witness;
  row.witness_theta = mu[l.witness].point.theta();

  const std::vector<Complex> pts = mu.points();
  double delta = kPi / 4.0;
  while (true) {
    row.window_atoms = 0;
    row.window_sup = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      // Angular distance to θ = 0, so either orientation of the Cayley map works.
      const double dist = arc_distance(mu[j].point, CirclePoint(0.0));
      if (!(dist > delta && dist <= 0.5 * kPi)) continue;
      ++row.window_atoms;
      double s = 0.0;
      for (std::size_t n = 0; n < mu.size(); ++n) {
        if (n != j) s += mu[n].mass / std::norm(pts[n] - pts[j]);
      }
      row.window_sup = std::max(row.window_sup, s);
    }
    row.window_delta = delta;
    if (row.window_atoms > 0 || delta * 0.5 < 1e-6) break;
    delta *= 0.5;
  }
  return row;
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  const std::vector<std::string_view> parts = split(text, ':');
  if (parts[0] == "exp" && parts.size() == 1) return ExpExample{};
  if (parts[0] == "monomial" && parts.size() == 2) {
    const int k = parse_number<int>(parts[1], "monomial degree");
    if (k < 1) throw Error(ErrorCode::kInvalidInput, "monomial degree must be >= 1");
    return Monomial{k};
  }
  if (parts[0] == "counterexample" && (parts.size() == 3 || parts.size() == 4)) {
    CounterexampleBlaschke c;
    c.alpha = parse_number<double>(parts[1], "counterexample alpha");
    c.K = parse_number<int>(parts[2], "counterexample K");
    if (parts.size() == 4) {
      if (parts[3] != "sym") throw Error(ErrorCode::kInvalidInput, "expected ':sym' suffix");
      c.symmetrized = true;
    }
    if (!(c.alpha > 0.0 && c.alpha <= 1.0) || c.K < 1) {
      throw Error(ErrorCode::kInvalidInput, "counterexample needs alpha in (0,1] and K >= 1");
    }
    return c;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown family '" + std::string(text) + "'");
}

std::string to_string(const FamilySpec& f) {
  return std::visit(Overloaded{
                        [](const Monomial& m) { return "monomial:" + std::to_string(m.k); },
                        [](const ExpExample&) { return std::string("exp"); },
                        [](const CounterexampleBlaschke& c) {
                          std::ostringstream os;
                          os << "counterexample:" << c.alpha << ':' << c.K
                             << (c.symmetrized ? ":sym" : "");
                          return os.str();
                        },
                    },
                    f);
}

std::vector<Complex> counterexample_zeros(const CounterexampleBlaschke& c) {
  const Complex I(0.0, 1.0);
  std::vector<Complex> zeros;
  auto push = [&](Complex lambda) { zeros.push_back((lambda - I) / (lambda + I)); };
  for (int n = 1; n <= c.K; ++n) {
    const double x = std::pow(static_cast<double>(n), c.alpha);
    const double y = std::pow(static_cast<double>(n), c.alpha - 1.0);
    push(Complex(x, y));
    if (c.symmetrized) push(Complex(-x, y));
  }
  return zeros;
}

InnerFunction inner_function(const FamilySpec& f) {
  return std::visit(Overloaded{
                        [](const Monomial& m) { return InnerFunction::monomial(m.k); },
                        [](const ExpExample&) {
                          return InnerFunction::singular({SingularAtom{CirclePoint(0.0), 1.0}});
                        },
                        [](const CounterexampleBlaschke& c) {
                          return InnerFunction::blaschke(counterexample_zeros(c));
                        },
                    },
                    f);
}

std::vector<CirclePoint> accumulation_points(const FamilySpec& f) {
  if (std::holds_alternative<Monomial>(f)) return {};
  return {CirclePoint(0.0)};
}

double exp_atom_angle(long long n) {
  return canonical_angle(kPi + 2.0 * std::atan(kTwoPi * static_cast<double>(n)));
}

double exp_atom_mass(long long n) {
  const double x = kTwoPi * static_cast<double>(n);
  return 2.0 / (x * x + 1.0);
}

ClarkData exp_example_closed_form(long long n_min, long long n_max) {
  if (n_max < n_min) throw Error(ErrorCode::kInvalidArgument, "empty index range");
  std::vector<CirclePoint> atoms;
  std::vector<double> der;
  for (long long n = n_min; n <= n_max; ++n) {
    atoms.emplace_back(exp_atom_angle(n));
    der.push_back(1.0 / exp_atom_mass(n));
  }
  ClarkData d = make_clark_data(0.0, atoms, der, {CirclePoint(0.0)});
  // Masses come from the closed form directly rather than 1/(1/mass).
  std::vector<Atom> exact;
  for (long long n = n_min; n <= n_max; ++n) exact.push_back({CirclePoint(exp_atom_angle(n)), exp_atom_mass(n)});
  d.measure = AtomicMeasure(std::move(exact));
  d.constants = neighbor_constants(d.measure, d.accumulation);
  return d;
}

ClarkData exp_example_symmetric(long long M) { return exp_example_closed_form(-M, M); }

ClarkData exp_example_section(std::size_t N) {
  if (N == 0) throw Error(ErrorCode::kInvalidArgument, "section size must be positive");
  const auto half = static_cast<long long>(N / 2);
  return exp_example_closed_form(-half, static_cast<long long>(N) - 1 - half);
}

ClarkData exp_example_numeric(long long M, double alpha, const ScanOptions& opts) {
  if (M < 0) throw Error(ErrorCode::kInvalidArgument, "truncation must be nonnegative");
  // θ_n increases with n; n < 0 sits in (0, π), n > 0 in (π, 2π).
  const double lo = 0.5 * (exp_atom_angle(-M - 1) + exp_atom_angle(-M));
  const double hi = 0.5 * (exp_atom_angle(M) + exp_atom_angle(M + 1));
  const InnerFunction u = inner_function(ExpExample{});
  return clark_data(u, alpha, Arc(CirclePoint(lo), hi - lo, true, true), opts);
}

ClarkData family_clark_data(const FamilySpec& f, double alpha, std::size_t truncation,
                            const ScanOptions& opts) {
  if (std::holds_alternative<ExpExample>(f)) {
    return exp_example_numeric(static_cast<long long>(truncation), alpha, opts);
  }
  ClarkData d = clark_data(inner_function(f), alpha, Arc::full_circle(), opts);
  const std::vector<CirclePoint> acc = accumulation_points(f);
  if (!acc.empty()) {
    d.accumulation = acc;
    d.constants = neighbor_constants(d.measure, d.accumulation);
  }
  return d;
}

DivergenceReport counterexample_divergence(double alpha, std::span<const int> Ks, bool symmetrized) {
  std::vector<DivergenceRow> rows;
  for (int K : Ks) {
    const CounterexampleBlaschke c{alpha, K, symmetrized};
    const ClarkData d = clark_data(inner_function(c), 0.0, Arc::full_circle());
    rows.push_back(divergence_row(K, squared_measure(d.measure)));
  }
  std::ostringstream name;
  name << "counterexample:" << alpha << (symmetrized ? ":sym" : "");
  return summarize(name.str(), std::move(rows));
}

DivergenceReport exp_contrast(std::span<const int> Ks) {
  std::vector<DivergenceRow> rows;
  for (int K : Ks) {
    const ClarkData d = exp_example_numeric(K);
    rows.push_back(divergence_row(K, squared_measure(d.measure)));
  }
  return summarize("exp", std::move(rows));
}

}  // namespace clarklab
