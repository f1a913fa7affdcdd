#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "clarklab/clark.hpp"
#include "clarklab/error.hpp"
#include "clarklab/families.hpp"

using namespace clarklab;

namespace {

const InnerFunction kExp = inner_function(ExpExample{});

double gap_free_distance(double a, double b) { return arc_distance(CirclePoint(a), CirclePoint(b)); }

}  // namespace

TEST_CASE("find_atoms examples") {
  const auto a = find_atoms(InnerFunction::identity(), 0.25, Arc::open(1e-3, kTwoPi - 1e-3));
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a[0].theta() - kPi / 2) < 1e-12);

  const auto b = find_atoms(InnerFunction::monomial(2), 0.0, Arc::full_circle());
  REQUIRE(b.size() == 2);
  CHECK(gap_free_distance(b[0].theta(), 0.0) < 1e-12);
  CHECK(std::abs(b[1].theta() - kPi) < 1e-12);

  const auto c = find_atoms(kExp, 0.0, Arc::open(0.05, kTwoPi - 0.05));
  bool has_pi = false;
  for (const CirclePoint& p : c) has_pi = has_pi || p.theta() == kPi || std::abs(p.theta() - kPi) < 1e-15;
  CHECK(has_pi);
}

TEST_CASE("scan arcs touching the spectrum are rejected") {
  CHECK_THROWS_WITH_AS(find_atoms(kExp, 0.0, Arc::full_circle()), doctest::Contains("SpectrumPoint"), Error);
  CHECK_THROWS_AS(find_atoms(kExp, 0.0, Arc::open(1e-10, kTwoPi - 1e-10)), Error);
}

TEST_CASE("exp atoms agree with the closed-form oracle") {
  const auto atoms = find_atoms(kExp, 0.0, Arc::open(0.01, kTwoPi - 0.01));
  std::vector<double> expected;
  for (long long n = -200; n <= 200; ++n) {
    const double t = std::arg(oracle::exp_atom(n));
    const double c = t < 0 ? t + kTwoPi : t;
    if (c > 0.01 && c < kTwoPi - 0.01) expected.push_back(c);
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(atoms.size() == expected.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) CHECK(gap_free_distance(atoms[i].theta(), expected[i]) < 1e-10);
}

TEST_CASE("property: find_atoms matches a sampled level-set oracle on random Blaschke products") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto zeros = gen.blaschke_zeros(static_cast<std::size_t>(gen.integer(1, 8)), 0.7);
    const double alpha = gen.uniform(0.0, 1.0);
    const InnerFunction u = InnerFunction::blaschke(zeros);
    const auto atoms = find_atoms(u, alpha, Arc::full_circle());
    const auto ref = oracle::sampled_level_set([&](Complex z) { return oracle::blaschke(zeros, z); },
                                               kTwoPi * alpha, 20000);
    CHECK(atoms.size() == zeros.size());
    REQUIRE(atoms.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      double best = 10.0;
      for (const CirclePoint& p : atoms) best = std::min(best, gap_free_distance(p.theta(), ref[i]));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("property: atoms are stable under tol refinement") {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    const InnerFunction u = InnerFunction::blaschke(gen.blaschke_zeros(5, 0.8));
    const auto a = find_atoms(u, 0.3, Arc::full_circle(), 1e-8);
    const auto b = find_atoms(u, 0.3, Arc::full_circle(), 5e-9);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(arc_distance(a[i], b[i]) < 1e-8);
  }
}

TEST_CASE("clark_data examples") {
  const ClarkData z = clark_data(InnerFunction::identity(), 0.0, Arc::full_circle());
  REQUIRE(z.measure.size() == 1);
  CHECK(z.measure[0].mass == doctest::Approx(1.0));
  CHECK_FALSE(z.constants.has_value());

  const ClarkData z2 = clark_data(InnerFunction::monomial(2), 0.0, Arc::full_circle());
  REQUIRE(z2.measure.size() == 2);
  CHECK(z2.measure[0].mass == doctest::Approx(0.5));
  CHECK(z2.measure[1].mass == doctest::Approx(0.5));
  REQUIRE(z2.constants);
  CHECK(z2.constants->A == doctest::Approx(0.25));
  CHECK(z2.constants->B == doctest::Approx(0.25));

  const ClarkData e = exp_example_numeric(100);
  REQUIRE(e.measure.size() == 201);
  for (std::size_t i = 0; i < e.measure.size(); ++i) {
    const long long n = static_cast<long long>(i) - 100;
    const double x = 2.0 * kPi * static_cast<double>(n);
    CHECK(std::abs(e.measure[i].mass * (x * x + 1.0) / 2.0 - 1.0) < 1e-10);
  }
}

TEST_CASE("property: mass-derivative duality and recomputable constants") {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 20; ++trial) {
    const InnerFunction u = InnerFunction::blaschke(gen.blaschke_zeros(static_cast<std::size_t>(gen.integer(2, 7))));
    const ClarkData d = clark_data(u, gen.uniform(0.0, 1.0), Arc::full_circle());
    for (std::size_t i = 0; i < d.measure.size(); ++i) {
      CHECK(std::abs(d.measure[i].mass * d.derivatives[i] - 1.0) < 1e-10);
    }
    REQUIRE(d.constants);
    double A = 1e300;
    double B = 0.0;
    for (std::size_t i = 0; i < d.measure.size(); ++i) {
      const std::size_t nx = (i + 1) % d.measure.size();
      const std::size_t pv = (i + d.measure.size() - 1) % d.measure.size();
      const double gp = std::abs(d.measure[i].point.z() - d.measure[nx].point.z());
      const double gm = std::abs(d.measure[i].point.z() - d.measure[pv].point.z());
      A = std::min(A, d.measure[i].mass / std::max(gp, gm));
      B = std::max(B, d.measure[i].mass / std::min(gp, gm));
    }
    CHECK(d.constants->A == doctest::Approx(A).epsilon(1e-12));
    CHECK(d.constants->B == doctest::Approx(B).epsilon(1e-12));
  }
}

TEST_CASE("property: total Clark mass matches the Poisson identity at 0") {
  oracle::Gen gen(34);
  for (int trial = 0; trial < 20; ++trial) {
    const auto zeros = gen.blaschke_zeros(static_cast<std::size_t>(gen.integer(1, 6)));
    const double alpha = gen.uniform(0.0, 1.0);
    const ClarkData d = clark_data(InnerFunction::blaschke(zeros), alpha, Arc::full_circle());
    const Complex u0 = oracle::blaschke(zeros, Complex(0.0));
    const double expected = (1.0 - std::norm(u0)) / std::norm(std::polar(1.0, kTwoPi * alpha) - u0);
    CHECK(d.measure.total_mass() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("property: Clark atoms for different alpha interlace") {
  oracle::Gen gen(35);
  for (int trial = 0; trial < 10; ++trial) {
    const InnerFunction u = InnerFunction::blaschke(gen.blaschke_zeros(6, 0.85));
    const ClarkData base = clark_data(u, 0.0, Arc::full_circle());
    for (double a : {0.25, 0.5, 0.75}) {
      const ClarkData other = clark_data(u, a, Arc::full_circle());
      REQUIRE(other.measure.size() == base.measure.size());
      for (std::size_t i = 0; i < base.measure.size(); ++i) {
        const Arc gap = Arc::between(base.measure[i].point, base.measure[base.measure.next(i)].point, false, false);
        std::size_t count = 0;
        for (const Atom& x : other.measure.atoms()) count += gap.contains(x.point) ? 1 : 0;
        CHECK(count == 1);
      }
    }
  }
  // Exp truncation, interior gaps only.
  const ClarkData e0 = exp_example_numeric(50, 0.0);
  const ClarkData e1 = exp_example_numeric(50, 0.5);
  for (std::size_t i = 0; i + 1 < e0.measure.size(); ++i) {
    const Arc gap = Arc::between(e0.measure[i].point, e0.measure[i + 1].point, false, false);
    std::size_t count = 0;
    for (const Atom& x : e1.measure.atoms()) count += gap.contains(x.point) ? 1 : 0;
    CHECK(count == 1);
  }
}

TEST_CASE("accumulation-aware neighbour constants skip straddling gaps") {
  const AtomicMeasure m({{CirclePoint(0.1), 1.0}, {CirclePoint(3.0), 1.0}, {CirclePoint(6.0), 1.0}});
  const CirclePoint acc[] = {CirclePoint(0.0)};
  CHECK(gap_straddles(m, 2, acc));
  CHECK_FALSE(gap_straddles(m, 0, acc));
  const auto raw = neighbor_constants(m);
  const auto inner = neighbor_constants(m, acc);
  REQUIRE(raw);
  REQUIRE(inner);
  CHECK(inner->B <= raw->B);
}

TEST_CASE("partition_T_N examples") {
  const auto q = partition_T_N(InnerFunction::identity(), 4, Arc::full_circle());
  REQUIRE(q.size() == 4);
  for (const Arc& a : q) CHECK(a.length() == doctest::Approx(kPi / 2));

  const auto q2 = partition_T_N(InnerFunction::monomial(2), 2, Arc::full_circle());
  REQUIRE(q2.size() == 4);
  for (const Arc& a : q2) CHECK(a.length() == doctest::Approx(kPi / 2));

  const auto q3 = partition_T_N(kExp, 8, Arc::open(0.1, kTwoPi - 0.1));
  REQUIRE(q3.size() > 8);
  // Arcs shrink toward θ → 0⁺ and the product |J|·N·|u'| stays of order one.
  CHECK(q3.front().length() < q3[q3.size() / 2].length());
  for (const Arc& a : q3) {
    const double prod = a.length() * 8 * angular_derivative(kExp, a.start());
    CHECK(prod > 0.2 * kTwoPi);
    CHECK(prod < 5.0 * kTwoPi);
  }
}

TEST_CASE("feichtinger_check examples") {
  CHECK(feichtinger_check(InnerFunction::identity(), 16, Arc::full_circle()).max_derivative_ratio ==
        doctest::Approx(1.0));
  CHECK(feichtinger_check(InnerFunction::monomial(2), 8, Arc::full_circle()).max_derivative_ratio ==
        doctest::Approx(1.0));
  const FeichtingerReport r = feichtinger_check(kExp, 64, Arc::open(0.05, kTwoPi - 0.05));
  CHECK(r.max_derivative_ratio <= 100.0 / 81.0);
  CHECK(r.note.find("not verified") != std::string::npos);
}

TEST_CASE("comparability_check examples") {
  const InnerFunction u = InnerFunction::monomial(2);
  const ClarkData d0 = clark_data(u, 0.0, Arc::full_circle());
  const ClarkData dh = clark_data(u, 0.5, Arc::full_circle());
  const Arc q(CirclePoint(-kPi / 4), kPi, true, false);
  const Arc arcs[] = {q, Arc::full_circle()};
  const ComparabilityReport r = comparability_check(d0, dh, arcs);
  CHECK(r.min_alpha_ratio == doctest::Approx(1.0));
  CHECK(r.max_alpha_ratio == doctest::Approx(1.0));
  const Arc empty[] = {Arc::open(0.1, 0.2)};
  CHECK_THROWS_WITH_AS(comparability_check(d0, dh, empty), doctest::Contains("EmptyArc"), Error);

  // On the exp example the half-level atoms nearest π sit at π ± 2 atan(π),
  // so the only wide arc around π that holds both is nearly the whole circle.
  const ClarkData e0 = exp_example_numeric(200, 0.0);
  const ClarkData eh = exp_example_numeric(200, 0.5);
  std::vector<Arc> dyadic{Arc(CirclePoint(0.01 * kPi), 1.98 * kPi, true, false)};
  // Runs of two consecutive atoms; each holds one atom of the other measure.
  for (std::size_t i = 0; i + 2 < e0.measure.size(); i += 7) {
    dyadic.push_back(Arc::between(e0.measure[i].point, e0.measure[i + 2].point, true, false));
  }
  const ComparabilityReport re = comparability_check(e0, eh, dyadic);
  CHECK(re.lebesgue_arc_count >= 1);
  CHECK(std::isfinite(re.empirical_K));
  CHECK(re.empirical_K < 50.0);
}

TEST_CASE("full-circle scans do not repeat the atom at the seam") {
  for (int k = 1; k <= 64; ++k) {
    const auto atoms = find_atoms(InnerFunction::monomial(k), 0.0, Arc::full_circle(), 1e-13);
    REQUIRE(atoms.size() == static_cast<std::size_t>(k));
    CHECK(atoms.front().theta() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(atoms.back().theta() == doctest::Approx(kTwoPi * (k - 1) / k).epsilon(1e-12));
  }
}
