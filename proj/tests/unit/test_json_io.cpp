#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>

#include "../oracles.hpp"
#include "clarklab/error.hpp"
#include "clarklab/json_io.hpp"

using namespace clarklab;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("numbers round-trip bit-identically") {
  oracle::Gen gen(71);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(gen.uniform(-1.0, 1.0), gen.integer(-300, 300));
    const Json j = Json::parse(number_to_json(x).dump());
    CHECK(same_bits(number_from_json(j), x));
  }
  CHECK(std::isinf(number_from_json(Json::parse(number_to_json(std::numeric_limits<double>::infinity()).dump()))));
  CHECK(number_from_json(Json("-inf")) < 0.0);
  CHECK(std::isnan(number_from_json(number_to_json(std::nan("")))));
  CHECK_THROWS_WITH_AS(number_from_json(Json("big")), doctest::Contains("InvalidInput"), Error);
  CHECK_THROWS_AS(number_from_json(Json::array()), Error);
}

TEST_CASE("measures round-trip") {
  oracle::Gen gen(72);
  const auto th = gen.angles(25);
  const auto ms = gen.masses(25);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < 25; ++i) atoms.push_back({CirclePoint(th[i]), ms[i]});
  const AtomicMeasure m(atoms);
  const AtomicMeasure back = measure_from_json(Json::parse(to_json(m).dump()));
  REQUIRE(back.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(same_bits(back[i].point.theta(), m[i].point.theta()));
    CHECK(same_bits(back[i].mass, m[i].mass));
  }
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"atoms":[{"theta":1.0}]})")), Error);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"atoms":[{"theta":1.0,"mass":-1}]})")), Error);
}

TEST_CASE("inner functions round-trip") {
  oracle::Gen gen(73);
  const InnerFunction u = InnerFunction::product(
      {InnerFunction::blaschke(gen.blaschke_zeros(4), std::polar(1.0, 0.3)),
       InnerFunction::singular({{CirclePoint(1.0), 0.5}, {CirclePoint(4.0), 2.0}})});
  const InnerFunction v = inner_function_from_json(Json::parse(to_json(u).dump()));
  for (int k = 0; k < 20; ++k) {
    const Complex z = gen.disk_point();
    CHECK(u(z) == v(z));
  }
  CHECK(to_json(v) == to_json(u));
  CHECK_THROWS_AS(inner_function_from_json(Json::parse(R"({"type":"rational"})")), Error);
}

TEST_CASE("Clark data and plans round-trip") {
  const ClarkData d = clark_data(InnerFunction::blaschke({Complex(0.3, 0.2), Complex(-0.5, 0.1)}), 0.25,
                                 Arc::full_circle());
  const ClarkData e = clark_data_from_json(Json::parse(to_json(d).dump()));
  CHECK(e.alpha == d.alpha);
  CHECK(e.derivatives == d.derivatives);
  REQUIRE(e.constants);
  CHECK(same_bits(e.constants->A, d.constants->A));
  CHECK(same_bits(e.constants->B, d.constants->B));
  CHECK(to_json(e) == to_json(d));

  const PerturbationPlan p = random_plan(d, 99, 0.5);
  const PerturbationPlan q = plan_from_json(Json::parse(to_json(p).dump()));
  CHECK(q.t_offsets == p.t_offsets);
  CHECK(q.eps == p.eps);
  CHECK(q.alpha == p.alpha);
  CHECK(q.seed == p.seed);
  Json no_base = to_json(p);
  no_base.erase("base");
  CHECK_THROWS_AS(plan_from_json(no_base), Error);
  CHECK(plan_from_json(no_base, &d).eps == p.eps);
}

TEST_CASE("scan config round-trip") {
  ScanConfig c;
  c.grid_depth = 7;
  c.support_tol = 3e-9;
  c.extra_boundary_points = {CirclePoint(0.5)};
  const ScanConfig b = scan_config_from_json(Json::parse(to_json(c).dump()));
  CHECK(b.grid_depth == 7);
  CHECK(b.support_tol == 3e-9);
  REQUIRE(b.extra_boundary_points.size() == 1);
  CHECK(b.extra_boundary_points[0].theta() == 0.5);
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "clarklab_json_io_test.json").string();
  const Json j = {{"x", 1.5}, {"atoms", Json::array()}};
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::remove(path.c_str());
  CHECK_THROWS_WITH_AS(read_json_file(path), doctest::Contains("InvalidInput"), Error);
  CHECK_THROWS_AS(write_json_file("/nonexistent-dir/x.json", j), Error);
}
