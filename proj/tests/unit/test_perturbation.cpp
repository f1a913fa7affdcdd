#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "clarklab/bessonov.hpp"
#include "clarklab/error.hpp"
#include "clarklab/families.hpp"
#include "clarklab/perturbation.hpp"
#include "clarklab/potentials.hpp"

using namespace clarklab;

namespace {

ClarkData monomial_base(int k) { return clark_data(InnerFunction::monomial(k), 0.0, Arc::full_circle()); }

PerturbationPlan zero_plan(const ClarkData& base) {
  PerturbationPlan p;
  p.base = base;
  const std::size_t n = base.measure.size();
  p.alpha.assign(n, 0.0);
  p.t_offsets.assign(n, 0.0);
  p.eps.assign(n, 0.0);
  return p;
}

}  // namespace

TEST_CASE("admissible alpha bound") {
  CHECK(admissible_alpha_bound(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(admissible_alpha_bound(1.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(admissible_alpha_bound(1.0, 10.0) == doctest::Approx(1.0 / 300.0));
  CHECK_THROWS_WITH_AS(admissible_alpha_bound(2.0, 1.0), doctest::Contains("InvalidConstants"), Error);
  CHECK_THROWS_AS(admissible_alpha_bound(0.0, 1.0), Error);
}

TEST_CASE("condition (ii) supremum") {
  const ClarkData d = monomial_base(2);
  const std::vector<double> a{0.1, 0.1};
  CHECK(condition_ii_sup(d, a).value == doctest::Approx(0.025));
  const std::vector<double> z{0.0, 0.0};
  CHECK(condition_ii_sup(d, z).value == 0.0);
  CHECK_THROWS_WITH_AS(condition_ii_sup(d, std::vector<double>{0.1}), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("generate applies offsets and mass changes") {
  const ClarkData d = monomial_base(4);
  PerturbationPlan p = zero_plan(d);
  p.alpha.assign(4, 0.2);
  p.t_offsets[1] = 0.04;
  p.eps[2] = -0.05;
  const AtomicMeasure g = generate(p);
  CHECK(g[1].point.theta() == doctest::Approx(kPi / 2 + 0.04));
  CHECK(g[2].mass == doctest::Approx(0.2));
  CHECK(g.total_mass() == doctest::Approx(0.95));
  CHECK(generate(zero_plan(d)).total_mass() == doctest::Approx(1.0));
}

TEST_CASE("property: the zero plan reproduces the base measure exactly") {
  std::vector<ClarkData> bases{monomial_base(5), exp_example_symmetric(40)};
  for (const ClarkData& base : bases) {
    const AtomicMeasure g = generate(zero_plan(base));
    REQUIRE(g.size() == base.measure.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g[i].point.theta() == base.measure[i].point.theta());
      CHECK(g[i].mass == base.measure[i].mass);
    }
  }
}

TEST_CASE("constraint violations name the bound") {
  const ClarkData d = monomial_base(4);  // A = B = 0.25/√2, cap = 1/2
  const double cap = admissible_alpha_bound(d.constants->A, d.constants->B);
  CHECK(cap == doctest::Approx(0.5));
  auto violation = [](const PerturbationPlan& p) -> std::string {
    try {
      validate(p);
    } catch (const ConstraintViolation& e) {
      return e.bound();
    }
    return "";
  };
  PerturbationPlan p = zero_plan(d);
  p.alpha[2] = -0.1;
  CHECK(violation(p) == bound::kAlphaSign);
  p = zero_plan(d);
  p.alpha[3] = 0.6;
  CHECK(violation(p) == bound::kAlphaCap);
  p = zero_plan(d);
  p.alpha[0] = 0.1;
  p.t_offsets[0] = 0.1;
  CHECK(violation(p) == bound::kOffset);
  p = zero_plan(d);
  p.alpha[0] = 0.1;
  p.eps[0] = 0.03;
  CHECK(violation(p) == bound::kMass);
  try {
    validate(p);
  } catch (const ConstraintViolation& e) {
    CHECK(e.index() == 0);
    CHECK(e.value() == doctest::Approx(0.03));
    CHECK(e.limit() == doctest::Approx(0.025));
  }
  p = zero_plan(d);
  p.alpha.pop_back();
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("squared measure") {
  const AtomicMeasure m({{CirclePoint(0.0), 0.5}, {CirclePoint(1.0), 3.0}});
  const AtomicMeasure s = squared_measure(m);
  CHECK(s[0].mass == 0.25);
  CHECK(s[1].mass == 9.0);
  CHECK(s[1].point.theta() == 1.0);
}

TEST_CASE("random plans are admissible and keep the criterion comparable") {
  std::vector<ClarkData> bases{monomial_base(3), monomial_base(8), exp_example_symmetric(60)};
  for (const ClarkData& base : bases) {
    const double l0 = lemma61_criterion(squared_measure(base.measure)).value;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const PerturbationPlan p = random_plan(base, seed);
      CHECK_NOTHROW(validate(p));
      const AtomicMeasure lam = generate(p);
      const BessonovReport r = bessonov_check(lam, base.accumulation);
      CHECK(r.verdict != Verdict::kFail);
      const AdmissibilityReport adm = perturbed_admissibility(base, lam);
      CHECK(adm.pass);
      // Masses move by at most half and distances by at most a third.
      const double l = lemma61_criterion(squared_measure(lam)).value;
      CHECK(l <= 9.0 * l0);
      CHECK(l >= l0 / 9.0);
    }
  }
}

TEST_CASE("property: on the exp base the criterion stays within a factor 4") {
  const ClarkData base = exp_example_symmetric(100);
  const double l0 = lemma61_criterion(squared_measure(base.measure)).value;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const double l = lemma61_criterion(squared_measure(generate(random_plan(base, seed)))).value;
    CHECK(l <= 4.0 * l0);
    CHECK(l >= l0 / 4.0);
  }
}

TEST_CASE("random plans are reproducible from the seed") {
  const ClarkData base = exp_example_symmetric(20);
  const PerturbationPlan a = random_plan(base, 7, 0.5);
  const PerturbationPlan b = random_plan(base, 7, 0.5);
  CHECK(a.t_offsets == b.t_offsets);
  CHECK(a.eps == b.eps);
  CHECK(random_plan(base, 8).eps != a.eps);
  CHECK_THROWS_AS(random_plan(base, 1, 1.5), Error);
}
