#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "clarklab/error.hpp"
#include "clarklab/families.hpp"

using namespace clarklab;

TEST_CASE("family parsing") {
  CHECK(parse_family("exp") == FamilySpec(ExpExample{}));
  CHECK(parse_family("monomial:5") == FamilySpec(Monomial{5}));
  CHECK(parse_family("counterexample:0.5:32") == FamilySpec(CounterexampleBlaschke{0.5, 32, false}));
  CHECK(parse_family("counterexample:1:8:sym") == FamilySpec(CounterexampleBlaschke{1.0, 8, true}));
  for (const char* bad : {"", "exp:3", "monomial", "monomial:0", "monomial:x", "counterexample:2:8",
                          "counterexample:0.5:8:odd", "blaschke"}) {
    CHECK_THROWS_WITH_AS(parse_family(bad), doctest::Contains("InvalidInput"), Error);
  }
  for (const char* text : {"exp", "monomial:3", "counterexample:0.25:16", "counterexample:1:4:sym"}) {
    CHECK(to_string(parse_family(text)) == text);
  }
}

TEST_CASE("exp closed forms") {
  CHECK(exp_atom_angle(0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(exp_atom_mass(0) == 2.0);
  CHECK(std::abs(std::polar(1.0, exp_atom_angle(1)) - oracle::exp_atom(1)) < 1e-15);
  CHECK(exp_atom_mass(1) == doctest::Approx(oracle::exp_mass(1)));
  CHECK(exp_atom_mass(-3) == exp_atom_mass(3));
  // Reflection: θ_{-n} = 2π - θ_n.
  for (long long n = 1; n < 50; ++n) {
    CHECK(exp_atom_angle(-n) == doctest::Approx(kTwoPi - exp_atom_angle(n)).epsilon(1e-14));
  }
  const ClarkData d = exp_example_symmetric(1000);
  CHECK(d.measure.size() == 2001);
  const double tail = oracle::exp_total_mass() - oracle::lattice_sum(1000, oracle::exp_mass);
  CHECK(d.measure.total_mass() == doctest::Approx(oracle::exp_total_mass() - tail).epsilon(1e-13));
  const ClarkData s = exp_example_section(7);
  CHECK(s.measure.size() == 7);
  CHECK(s.measure.total_mass() ==
        doctest::Approx(oracle::lattice_sum(3, oracle::exp_mass)).epsilon(1e-14));
}

TEST_CASE("numeric exp atoms match the closed form") {
  const ClarkData num = exp_example_numeric(200);
  const ClarkData ref = exp_example_symmetric(200);
  REQUIRE(num.measure.size() == ref.measure.size());
  for (std::size_t i = 0; i < ref.measure.size(); ++i) {
    CHECK(std::abs(num.measure[i].point.theta() - ref.measure[i].point.theta()) < 1e-10);
    CHECK(num.measure[i].mass == doctest::Approx(ref.measure[i].mass).epsilon(1e-9));
  }
  const ClarkData via = family_clark_data(ExpExample{}, 0.0, 200);
  CHECK(via.measure.size() == ref.measure.size());
}

TEST_CASE("counterexample zeros lie in the disk") {
  for (double a : {0.25, 0.5, 1.0}) {
    for (bool sym : {false, true}) {
      const auto z = counterexample_zeros({a, 64, sym});
      CHECK(z.size() == (sym ? 128u : 64u));
      for (const Complex& w : z) CHECK(std::abs(w) < 1.0);
      // The zeros approach θ = 0.
      CHECK(std::abs(z[sym ? 126 : 63] - 1.0) < std::abs(z[0] - 1.0));
    }
  }
}

TEST_CASE("counterexample Clark atoms on a small product") {
  const CounterexampleBlaschke c{1.0, 2, false};
  const ClarkData d = family_clark_data(c, 0.0, 0);
  CHECK(d.measure.size() == 2);
  CHECK(d.accumulation.size() == 1);
  const auto zeros = counterexample_zeros(c);
  for (const Atom& a : d.measure.atoms()) {
    CHECK(std::abs(oracle::blaschke(zeros, a.point.z()) - 1.0) < 1e-10);
  }
  const std::vector<int> Ks{2};
  const DivergenceReport r = counterexample_divergence(1.0, Ks);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].atom_count == 2);
  CHECK(r.rows[0].lemma61 > 0.0);
  CHECK_FALSE(r.strictly_increasing);
}

TEST_CASE("criterion grows along the counterexample family") {
  const std::vector<int> Ks{16, 32, 64};
  const DivergenceReport r = counterexample_divergence(0.5, Ks);
  CHECK(r.family == "counterexample:0.5");
  CHECK(r.strictly_increasing);
  CHECK(r.growth > 1.0);
  for (const DivergenceRow& row : r.rows) CHECK(row.window_atoms > 0);
  const DivergenceReport e = exp_contrast(Ks);
  CHECK(e.max_relative_change < 0.01);
}
