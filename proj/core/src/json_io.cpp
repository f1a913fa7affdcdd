#include "clarklab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "clarklab/error.hpp"

namespace clarklab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json complex_to_json(Complex z) { return {{"re", number_to_json(z.real())}, {"im", number_to_json(z.imag())}}; }

Complex complex_from_json(const Json& j) {
  return {number_from_json(j.at("re")), number_from_json(j.at("im"))};
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> numbers_from(const Json& j) {
  std::vector<double> v;
  for (const Json& x : j) v.push_back(number_from_json(x));
  return v;
}

Json record(const ConditionRecord& c) {
  return {{"ok", c.ok}, {"flagged", c.flagged}, {"note", c.note}};
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidInput, e.what());
  }
}

}  // namespace

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::kInvalidInput, "expected a number, got " + j.dump());
}

Json to_json(const AtomicMeasure& m) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms()) {
    atoms.push_back({{"theta", a.point.theta()}, {"mass", number_to_json(a.mass)}});
  }
  return {{"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& j) {
  return guarded([&] {
    std::vector<Atom> atoms;
    for (const Json& a : j.at("atoms")) {
      atoms.push_back({CirclePoint(number_from_json(a.at("theta"))), number_from_json(a.at("mass"))});
    }
    return AtomicMeasure(std::move(atoms));
  });
}

Json to_json(const InnerFunction& u) {
  return std::visit(Overloaded{
                        [](const FiniteBlaschke& b) {
                          Json zeros = Json::array();
                          for (const Complex& z : b.zeros) zeros.push_back(complex_to_json(z));
                          return Json{{"type", "blaschke"}, {"zeros", zeros}, {"front", complex_to_json(b.front)}};
                        },
                        [](const SingularAtomic& s) {
                          Json atoms = Json::array();
                          for (const SingularAtom& a : s.atoms) {
                            atoms.push_back({{"theta", a.point.theta()}, {"weight", a.weight}});
                          }
                          return Json{{"type", "singular"}, {"atoms", atoms}};
                        },
                        [](const Product& p) {
                          Json factors = Json::array();
                          for (const InnerFunction& f : p.factors) factors.push_back(to_json(f));
                          return Json{{"type", "product"}, {"factors", factors}};
                        },
                    },
                    u.variant());
}

InnerFunction inner_function_from_json(const Json& j) {
  return guarded([&]() -> InnerFunction {
    const std::string type = j.at("type").get<std::string>();
    if (type == "blaschke") {
      std::vector<Complex> zeros;
      for (const Json& z : j.at("zeros")) zeros.push_back(complex_from_json(z));
      const Complex front = j.contains("front") ? complex_from_json(j.at("front")) : Complex(1.0);
      return InnerFunction::blaschke(std::move(zeros), front);
    }
    if (type == "singular") {
      std::vector<SingularAtom> atoms;
      for (const Json& a : j.at("atoms")) {
        atoms.push_back({CirclePoint(number_from_json(a.at("theta"))), number_from_json(a.at("weight"))});
      }
      return InnerFunction::singular(std::move(atoms));
    }
    if (type == "product") {
      std::vector<InnerFunction> factors;
      for (const Json& f : j.at("factors")) factors.push_back(inner_function_from_json(f));
      return InnerFunction::product(std::move(factors));
    }
    throw Error(ErrorCode::kInvalidInput, "unknown inner function type '" + type + "'");
  });
}

Json to_json(const ClarkData& d) {
  Json j = to_json(d.measure);
  j["alpha"] = d.alpha;
  j["derivatives"] = numbers(d.derivatives);
  if (d.constants) {
    j["A"] = number_to_json(d.constants->A);
    j["B"] = number_to_json(d.constants->B);
  }
  Json acc = Json::array();
  for (const CirclePoint& p : d.accumulation) acc.push_back(p.theta());
  j["accumulation"] = acc;
  j["edge_uncertain"] = d.edge_uncertain;
  return j;
}

ClarkData clark_data_from_json(const Json& j) {
  return guarded([&] {
    ClarkData d;
    d.measure = measure_from_json(j);
    d.alpha = j.value("alpha", 0.0);
    if (j.contains("derivatives")) {
      d.derivatives = numbers_from(j.at("derivatives"));
    } else {
      for (const Atom& a : d.measure.atoms()) d.derivatives.push_back(1.0 / a.mass);
    }
    if (d.derivatives.size() != d.measure.size()) {
      throw Error(ErrorCode::kInvalidInput, "derivatives and atoms differ in length");
    }
    if (j.contains("accumulation")) {
      for (const Json& t : j.at("accumulation")) d.accumulation.emplace_back(number_from_json(t));
    }
    if (j.contains("edge_uncertain")) d.edge_uncertain = j.at("edge_uncertain").get<std::vector<std::size_t>>();
    d.constants = neighbor_constants(d.measure, d.accumulation);
    return d;
  });
}

Json to_json(const PerturbationPlan& p) {
  Json j{{"alpha", numbers(p.alpha)}, {"t_offsets", numbers(p.t_offsets)}, {"eps", numbers(p.eps)}};
  if (p.seed) j["seed"] = *p.seed;
  j["base"] = to_json(p.base);
  return j;
}

PerturbationPlan plan_from_json(const Json& j, const ClarkData* base) {
  return guarded([&] {
    PerturbationPlan p;
    if (j.contains("base")) {
      p.base = clark_data_from_json(j.at("base"));
    } else if (base != nullptr) {
      p.base = *base;
    } else {
      throw Error(ErrorCode::kInvalidInput, "plan has no base measure");
    }
    p.alpha = numbers_from(j.at("alpha"));
    p.t_offsets = numbers_from(j.at("t_offsets"));
    p.eps = numbers_from(j.at("eps"));
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    return p;
  });
}

Json to_json(const ScanConfig& c) {
  Json extra = Json::array();
  for (const CirclePoint& p : c.extra_boundary_points) extra.push_back(p.theta());
  return {{"grid_depth", c.grid_depth},
          {"cluster_depth", c.cluster_depth},
          {"base_angular", c.base_angular},
          {"max_angular", c.max_angular},
          {"cluster_directions", c.cluster_directions},
          {"support_tol", c.support_tol},
          {"extra_boundary_points", extra}};
}

ScanConfig scan_config_from_json(const Json& j) {
  return guarded([&] {
    ScanConfig c;
    c.grid_depth = j.value("grid_depth", c.grid_depth);
    c.cluster_depth = j.value("cluster_depth", c.cluster_depth);
    c.base_angular = j.value("base_angular", c.base_angular);
    c.max_angular = j.value("max_angular", c.max_angular);
    c.cluster_directions = j.value("cluster_directions", c.cluster_directions);
    c.support_tol = j.value("support_tol", c.support_tol);
    if (j.contains("extra_boundary_points")) {
      for (const Json& t : j.at("extra_boundary_points")) c.extra_boundary_points.emplace_back(number_from_json(t));
    }
    return c;
  });
}

Json to_json(const PotentialReport& r) {
  Json spec = Json::array();
  for (std::size_t i = 0; i < r.spectrum_points.size(); ++i) {
    spec.push_back({{"theta", r.spectrum_points[i].theta()}, {"V", number_to_json(r.spectrum_values[i])}});
  }
  return {{"quantity", "|1-u|^2 V_mu = 4|a|^2 V_mu"},
          {"sup_estimate", number_to_json(r.sup_estimate)},
          {"inf_estimate", number_to_json(r.inf_estimate)},
          {"sup_witness", complex_to_json(r.sup_witness)},
          {"inf_witness", complex_to_json(r.inf_witness)},
          {"interior_sup", number_to_json(r.interior_sup)},
          {"boundary_sup", number_to_json(r.boundary_sup)},
          {"grid", r.grid},
          {"evaluations", r.evaluations},
          {"atom_limits", numbers(r.atom_limits)},
          {"spectrum", spec},
          {"converged", r.converged},
          {"truncation_change", number_to_json(r.truncation_change)}};
}

Json to_json(const Lemma61Result& r) {
  return {{"value", number_to_json(r.value)}, {"witness", r.witness}};
}

Json to_json(const MassRatioResult& r) {
  return {{"min", number_to_json(r.min)},
          {"max", number_to_json(r.max)},
          {"C", number_to_json(r.C)},
          {"min_witness", r.min_witness},
          {"max_witness", r.max_witness}};
}

Json to_json(const RadialLimitResult& r) {
  return {{"limit", number_to_json(r.limit)},
          {"target", number_to_json(r.target)},
          {"rel_error", number_to_json(r.rel_error)},
          {"radii", numbers(r.radii)},
          {"values", numbers(r.values)}};
}

Json to_json(const BessonovReport& r) {
  return {
      {"atom_count", r.atom_count},
      {"verdict", std::string(to_string(r.verdict))},
      {"support",
       {{"gap_sum", r.gap_sum}, {"max_gap", r.max_gap}, {"max_gap_witness", r.max_gap_witness},
        {"record", record(r.support)}}},
      {"isolation",
       {{"min_gap", number_to_json(r.min_gap)}, {"min_gap_witness", r.min_gap_witness},
        {"record", record(r.isolation)}}},
      {"neighbors", {{"straddling_gaps", r.straddling_gaps}, {"record", record(r.neighbors)}}},
      {"constants",
       {{"A", number_to_json(r.A)}, {"B", number_to_json(r.B)}, {"a_witness", r.a_witness},
        {"b_witness", r.b_witness}, {"raw_A", number_to_json(r.raw_A)}, {"raw_B", number_to_json(r.raw_B)},
        {"decay_slope", number_to_json(r.decay_slope)}, {"slope_tested", r.slope_tested},
        {"record", record(r.constants)}}},
      {"cauchy",
       {{"sup_c1", number_to_json(r.sup_c1)}, {"witness", r.c1_witness}, {"atoms_used", r.c1_atoms},
        {"record", record(r.cauchy)}}},
  };
}

Json to_json(const AdmissibilityReport& r) {
  return {{"alpha", numbers(r.alpha)},
          {"pairing", r.pairing},
          {"max_alpha", number_to_json(r.max_alpha)},
          {"witness", r.witness},
          {"cap", number_to_json(r.cap)},
          {"pass", r.pass}};
}

Json to_json(const TolsaReport& r) {
  return {{"max_ratio", number_to_json(r.max_ratio)},
          {"witness_start", r.witness_start},
          {"witness_count", r.witness_count},
          {"witness_arc", {{"start", r.witness_arc.start_angle()}, {"length", r.witness_arc.length()}}},
          {"arc_count", r.arc_count}};
}

Json to_json(const OperatorNormEstimate& r) {
  Json conv = Json::array();
  for (bool b : r.converged) conv.push_back(b);
  return {{"sizes", r.sizes},
          {"lower_bounds", numbers(r.lower_bounds)},
          {"converged", conv},
          {"iterations", r.iterations},
          {"monotone", r.monotone},
          {"last_growth", number_to_json(r.last_growth)},
          {"plateau", r.plateau},
          {"plateau_tol", r.plateau_tol},
          {"plateau_note", "plateau tolerance is an engineering threshold"}};
}

Json to_json(const FeichtingerReport& r) {
  return {{"N", r.N},
          {"arc_count", r.arc_count},
          {"max_derivative_ratio", number_to_json(r.max_derivative_ratio)},
          {"ratio_witness", r.ratio_witness},
          {"min_length_product", number_to_json(r.min_length_product)},
          {"max_length_product", number_to_json(r.max_length_product)},
          {"c1", r.c1},
          {"c2", r.c2},
          {"ratio_pass", r.ratio_pass},
          {"length_pass", r.length_pass},
          {"pass", r.pass},
          {"note", r.note}};
}

Json to_json(const DivergenceReport& r) {
  Json rows = Json::array();
  for (const DivergenceRow& row : r.rows) {
    rows.push_back({{"K", row.K},
                    {"atom_count", row.atom_count},
                    {"lemma61", number_to_json(row.lemma61)},
                    {"witness", row.witness},
                    {"witness_theta", row.witness_theta},
                    {"window_delta", row.window_delta},
                    {"window_atoms", row.window_atoms},
                    {"window_sup", number_to_json(row.window_sup)}});
  }
  return {{"family", r.family},
          {"rows", rows},
          {"strictly_increasing", r.strictly_increasing},
          {"growth", number_to_json(r.growth)},
          {"max_relative_change", number_to_json(r.max_relative_change)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kInvalidInput, "write failed for " + path);
}

}  // namespace clarklab
