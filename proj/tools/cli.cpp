#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "clarklab/bessonov.hpp"
#include "clarklab/cauchy.hpp"
#include "clarklab/error.hpp"
#include "clarklab/families.hpp"
#include "clarklab/json_io.hpp"
#include "clarklab/perturbation.hpp"
#include "clarklab/potentials.hpp"
#include "clarklab/version.hpp"

namespace clarklab::cli {

namespace {

struct Common {
  std::string family = "exp";
  double alpha = 0.0;
  std::size_t truncation = 100;
  double tol = kDefaultAtomTolerance;
  std::uint64_t seed = 1;
  std::string out;
};

struct Outcome {
  Json outputs = Json::object();
  bool pass = true;
};

ScanOptions scan_options(const Common& c) {
  ScanOptions o;
  o.tol = c.tol;
  return o;
}

ClarkData base_data(const Common& c) {
  return family_clark_data(parse_family(c.family), c.alpha, c.truncation, scan_options(c));
}

double coth(double x) { return std::cosh(x) / std::sinh(x); }

/// Σ_{|n|>M} 2/(4π²n²+1) ≤ 1/(π²M).
double exp_mass_tail(long long M) { return 1.0 / (kPi * kPi * static_cast<double>(M)); }

/// With μ_n = σ_n² each term of V_μ(1) is σ_n/2, so the truncation tail of
/// V_μ(1) is half the mass tail.
double exp_potential_tail(long long M) { return 0.5 * exp_mass_tail(M); }

AtomicMeasure measure_for(const std::string& masses, const ClarkData& d) {
  if (masses == "squared") return squared_measure(d.measure);
  if (masses == "clark") return d.measure;
  if (masses.rfind("scaled:", 0) == 0) {
    const double c = std::stod(masses.substr(7));
    return squared_measure(d.measure).scaled(c);
  }
  return measure_from_json(read_json_file(masses));
}

Outcome run_atoms(const Common& c) {
  const ClarkData d = base_data(c);
  Outcome o;
  o.outputs["clark_data"] = to_json(d);
  o.outputs["atom_count"] = d.measure.size();
  return o;
}

Outcome run_bessonov(const Common& c, const std::string& measure_path,
                     const std::vector<double>& accumulation) {
  AtomicMeasure m;
  std::vector<CirclePoint> acc;
  if (!measure_path.empty()) {
    const Json j = read_json_file(measure_path);
    const ClarkData d = clark_data_from_json(j);
    m = d.measure;
    acc = d.accumulation;
  } else {
    const ClarkData d = base_data(c);
    m = d.measure;
    acc = d.accumulation;
  }
  for (double t : accumulation) acc.emplace_back(t);
  const BessonovReport r = bessonov_check(m, acc);
  Outcome o;
  o.outputs["bessonov"] = to_json(r);
  o.pass = r.verdict != Verdict::kFail;
  return o;
}

Outcome run_tolsa(const Common& c) {
  const ClarkData d = base_data(c);
  const CauchySection s(d.measure);
  const TolsaReport t = tolsa_scan(s);
  const SectionNorm n = section_norm(s);
  Outcome o;
  o.outputs["tolsa"] = to_json(t);
  o.outputs["section_norm"] = number_to_json(n.value);
  o.outputs["section_size"] = s.size();
  o.pass = std::isfinite(t.max_ratio) && t.max_ratio <= n.value + 1e-9;
  return o;
}

Outcome run_norm(const Common& c, std::vector<std::size_t> sizes, const std::string& csv) {
  const FamilySpec f = parse_family(c.family);
  Outcome o;
  OperatorNormEstimate est;
  if (std::holds_alternative<ExpExample>(f)) {
    if (sizes.empty()) sizes = {32, 64, 128, 256, 512, 1024, 2048};
    est = operator_norm(sizes, [](std::size_t N) { return exp_example_section(N).measure; });
  } else {
    const ClarkData d = base_data(c);
    const std::size_t n = d.measure.size();
    est = operator_norm(std::span<const std::size_t>(&n, 1),
                        [&](std::size_t) { return d.measure; });
  }
  o.outputs["norm"] = to_json(est);
  bool all_converged = true;
  for (bool b : est.converged) all_converged = all_converged && b;
  o.pass = est.monotone && all_converged && (est.sizes.size() < 2 || est.plateau);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw Error(ErrorCode::kInvalidInput, "cannot write " + csv);
    f << "N,lower_bound,converged,iterations\n";
    for (std::size_t i = 0; i < est.sizes.size(); ++i) {
      f << est.sizes[i] << ',' << csv_number(est.lower_bounds[i]) << ',' << (est.converged[i] ? 1 : 0)
        << ',' << est.iterations[i] << '\n';
    }
  }
  return o;
}

Outcome run_potential(const Common& c, const std::string& masses, const std::string& config) {
  const FamilySpec f = parse_family(c.family);
  const ClarkData d = base_data(c);
  const AtomicMeasure mu = measure_for(masses, d);
  ScanConfig cfg;
  if (!config.empty()) cfg = scan_config_from_json(read_json_file(config));
  const InnerFunction u = inner_function(f);
  Outcome o;
  const PotentialReport r = sup_inf_scan(u, mu, cfg);
  o.outputs["scan_config"] = to_json(cfg);
  o.outputs["potential"] = to_json(r);
  if (mu.size() >= 2) o.outputs["lemma61"] = to_json(lemma61_criterion(mu));
  o.outputs["mass_ratio"] = to_json(mass_ratio_check(d, mu));
  bool spectrum_finite = true;
  for (double v : r.spectrum_values) spectrum_finite = spectrum_finite && std::isfinite(v);
  o.pass = std::isfinite(r.sup_estimate) && r.inf_estimate > 0.0 && spectrum_finite;
  return o;
}

Outcome run_perturb(const Common& c, const std::string& plan_path, double fraction) {
  const ClarkData base = base_data(c);
  PerturbationPlan plan = plan_path.empty() ? random_plan(base, c.seed, fraction)
                                            : plan_from_json(read_json_file(plan_path), &base);
  Outcome o;
  o.outputs["plan"] = {{"seed", plan.seed ? Json(*plan.seed) : Json()},
                       {"atom_count", plan.base.measure.size()}};
  try {
    const AtomicMeasure lambda = generate(plan);
    const BessonovReport b = bessonov_check(lambda, plan.base.accumulation);
    const AdmissibilityReport a = perturbed_admissibility(plan.base, lambda);
    o.outputs["measure"] = to_json(lambda);
    o.outputs["bessonov"] = to_json(b);
    o.outputs["admissibility"] = to_json(a);
    o.outputs["condition_ii"] = {{"value", condition_ii_sup(plan.base, plan.alpha).value}};
    if (lambda.size() >= 2) {
      const double l0 = lemma61_criterion(squared_measure(plan.base.measure)).value;
      const double l1 = lemma61_criterion(squared_measure(lambda)).value;
      o.outputs["lemma61"] = {{"base", l0}, {"perturbed", l1}, {"ratio", l1 / l0}, {"envelope", 9.0}};
      o.pass = l1 <= 9.0 * l0 && l0 <= 9.0 * l1;
    }
    o.pass = o.pass && b.verdict != Verdict::kFail && a.pass;
  } catch (const ConstraintViolation& v) {
    o.outputs["constraint_violation"] = {{"index", v.index()},
                                         {"bound", v.bound()},
                                         {"value", number_to_json(v.value())},
                                         {"limit", number_to_json(v.limit())},
                                         {"message", v.what()}};
    o.pass = false;
  }
  return o;
}

Json check(bool pass, Json detail) {
  detail["pass"] = pass;
  return detail;
}

Outcome example_exp(const Common& c) {
  const auto M = static_cast<long long>(c.truncation);
  Outcome o;
  const ClarkData d = exp_example_numeric(M, 0.0, scan_options(c));
  const ClarkData closed = exp_example_symmetric(M);
  double angle_err = 0.0;
  double mass_err = 0.0;
  for (std::size_t i = 0; i < d.measure.size() && i < closed.measure.size(); ++i) {
    angle_err = std::max(angle_err, arc_distance(d.measure[i].point, closed.measure[i].point));
    mass_err = std::max(mass_err, std::abs(d.measure[i].mass / closed.measure[i].mass - 1.0));
  }
  const bool count_ok = d.measure.size() == closed.measure.size();
  Json checks;
  checks["atoms"] = check(count_ok && angle_err <= 1e-10 && mass_err <= 1e-10,
                          {{"atom_count", d.measure.size()}, {"max_angle_error", angle_err},
                           {"max_mass_rel_error", mass_err}});

  const double deficit = coth(0.5) - closed.measure.total_mass();
  checks["total_mass"] = check(deficit >= 0.0 && deficit <= exp_mass_tail(M),
                               {{"deficit", deficit}, {"tail_bound", exp_mass_tail(M)}});

  const AtomicMeasure mu = squared_measure(closed.measure);
  const AtomicMeasure mu10 = squared_measure(exp_example_symmetric(10 * M).measure);
  const double l1 = lemma61_criterion(mu).value;
  const double l10 = lemma61_criterion(mu10).value;
  checks["lemma61"] = check(std::abs(l10 / l1 - 1.0) < 0.01,
                            {{"truncation", M}, {"value", l1}, {"truncation_10x", 10 * M},
                             {"value_10x", l10}});
  const double v1 = potential(mu10, Complex(1.0));
  const double v_err = std::abs(v1 - 0.5 * coth(0.5));
  checks["spectrum_potential"] = check(v_err <= 1e-6 + exp_potential_tail(10 * M),
                                       {{"truncation", 10 * M}, {"V_mu(1)", v1},
                                        {"target", 0.5 * coth(0.5)}, {"error", v_err}});

  const BessonovReport bc = bessonov_check(d.measure, d.accumulation);
  checks["bessonov_clark"] = check(bc.verdict != Verdict::kFail, to_json(bc));
  const BessonovReport bs = bessonov_check(mu, closed.accumulation);
  checks["bessonov_squared_rejected"] =
      check(bs.verdict == Verdict::kFail && !bs.constants.ok,
            {{"verdict", std::string(to_string(bs.verdict))}, {"condition_iv", bs.constants.note}});

  const InnerFunction u = inner_function(ExpExample{});
  bool radial_ok = true;
  Json radial = Json::array();
  for (long long k : {0LL, 1LL, -1LL, 5LL, -5LL}) {
    if (std::llabs(k) > M) continue;
    const auto idx = static_cast<std::size_t>(k + M);
    const RadialLimitResult r = radial_limit_check(u, mu, idx);
    radial_ok = radial_ok && r.rel_error <= 1e-3;
    Json j = to_json(r);
    j["n"] = k;
    radial.push_back(j);
  }
  checks["radial_limits"] = check(radial_ok, {{"atoms", radial}});

  const long long Ms = std::min<long long>(M, 100);
  ScanConfig cfg;
  cfg.grid_depth = 14;
  cfg.max_angular = 1024;
  cfg.cluster_depth = 10;
  const PotentialReport pr = sup_inf_scan(u, squared_measure(exp_example_symmetric(Ms).measure), cfg);
  checks["potential_scan"] = check(std::isfinite(pr.sup_estimate) && pr.inf_estimate > 0.0,
                                   {{"truncation", Ms}, {"report", to_json(pr)}});

  // Tail integrals on dyadic arcs centred at θ = π.
  const CauchySection sec(exp_example_symmetric(Ms).measure);
  Json tail = Json::array();
  for (int j = 0; j < 10; ++j) {
    const double half = kPi * std::ldexp(1.0, -j) * 0.999;
    const Arc Q(CirclePoint(kPi - half), 2.0 * half, false, false);
    const TailIntegral t = tail_integral_check(sec, Q, static_cast<std::size_t>(Ms));
    tail.push_back({{"scale", 2.0 * half}, {"lhs", t.lhs}, {"rhs_scale", t.rhs_scale}, {"ratio", t.ratio}});
  }
  o.outputs["tail_ratio_vs_scale"] = tail;

  bool pass = true;
  for (const auto& [name, value] : checks.items()) pass = pass && value.at("pass").get<bool>();
  o.outputs["checks"] = checks;
  o.pass = pass;
  return o;
}

Outcome example_monomial(const Common& c, int k) {
  Common cc = c;
  cc.family = "monomial:" + std::to_string(k);
  const ClarkData d = base_data(cc);
  Outcome o;
  const BessonovReport b = bessonov_check(d.measure);
  o.outputs["clark_data"] = to_json(d);
  o.outputs["bessonov"] = to_json(b);
  const CauchySection s(d.measure);
  o.outputs["section_norm"] = section_norm(s).value;
  if (d.measure.size() >= 2) {
    o.outputs["tolsa"] = to_json(tolsa_scan(s));
    o.outputs["lemma61"] = to_json(lemma61_criterion(squared_measure(d.measure)));
  }
  o.pass = b.verdict != Verdict::kFail;
  return o;
}

Outcome example_counterexample(const CounterexampleBlaschke& f) {
  std::vector<int> Ks;
  for (int k = f.K / 8; k <= f.K; k *= 2) {
    if (k >= 2) Ks.push_back(k);
  }
  const DivergenceReport r = counterexample_divergence(f.alpha, Ks, f.symmetrized);
  const DivergenceReport e = exp_contrast(Ks);
  Outcome o;
  o.outputs["divergence"] = to_json(r);
  o.outputs["exp_contrast"] = to_json(e);
  o.outputs["note"] = "pass means the truncations grow strictly while the exp contrast stays within 1%";
  o.pass = r.strictly_increasing && e.max_relative_change < 0.01;
  return o;
}

Outcome run_example(const Common& c, const std::string& name) {
  const FamilySpec f = parse_family(name);
  if (std::holds_alternative<ExpExample>(f)) return example_exp(c);
  if (const auto* m = std::get_if<Monomial>(&f)) return example_monomial(c, m->k);
  return example_counterexample(std::get<CounterexampleBlaschke>(f));
}

void append_series(std::ostream& csv, const std::string& source, const Json& outputs) {
  if (outputs.contains("norm")) {
    const Json& n = outputs.at("norm");
    for (std::size_t i = 0; i < n.at("sizes").size(); ++i) {
      csv << source << ",norm_vs_N," << n.at("sizes")[i].get<std::size_t>() << ','
          << csv_number(number_from_json(n.at("lower_bounds")[i])) << '\n';
    }
  }
  for (const char* key : {"divergence", "exp_contrast"}) {
    if (!outputs.contains(key)) continue;
    const Json& d = outputs.at(key);
    for (const Json& row : d.at("rows")) {
      csv << source << ",criterion_vs_K:" << d.at("family").get<std::string>() << ','
          << row.at("K").get<int>() << ',' << csv_number(number_from_json(row.at("lemma61"))) << '\n';
    }
  }
  if (outputs.contains("tail_ratio_vs_scale")) {
    for (const Json& row : outputs.at("tail_ratio_vs_scale")) {
      csv << source << ",ratio_vs_arc_scale," << csv_number(row.at("scale").get<double>()) << ','
          << csv_number(row.at("ratio").get<double>()) << '\n';
    }
  }
  if (outputs.contains("tolsa")) {
    csv << source << ",tolsa_max_ratio," << outputs.value("section_size", std::size_t{0}) << ','
        << csv_number(number_from_json(outputs.at("tolsa").at("max_ratio"))) << '\n';
  }
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ' ';
    s += args[i];
  }
  return s;
}

}  // namespace

std::string csv_number(double x) {
  std::ostringstream os;
  if (x != 0.0 && std::abs(x) < 1e-4) {
    os << std::scientific << std::setprecision(10) << x;
  } else {
    os << std::fixed << std::setprecision(12) << x;
    std::string s = os.str();
    if (s.find('.') != std::string::npos) {
      while (!s.empty() && s.back() == '0') s.pop_back();
      if (!s.empty() && s.back() == '.') s.pop_back();
    }
    return s;
  }
  return os.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, out, err);
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clark measures, potentials and Cauchy transforms of one-component inner functions",
               "clarklab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--family", c.family, "monomial:K | exp | counterexample:ALPHA:K[:sym]");
    s->add_option("--alpha", c.alpha, "Clark parameter in [0,1)")->check(CLI::Range(0.0, 1.0));
    s->add_option("--truncation", c.truncation, "exp: |n| <= M; ignored by finite families");
    s->add_option("--tol", c.tol, "bisection tolerance in radians")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "seed for random plans");
    s->add_option("--out", c.out, "write the JSON report here instead of stdout");
  };

  auto* atoms = app.add_subcommand("atoms", "find Clark atoms and emit ClarkData");
  add_common(atoms);

  std::string measure_path;
  std::vector<double> accumulation;
  auto* bess = app.add_subcommand("bessonov", "check the five conditions on a measure");
  add_common(bess);
  bess->add_option("--measure", measure_path, "ClarkData or AtomicMeasure JSON");
  bess->add_option("--accumulation", accumulation, "extra accumulation angles");

  auto* tolsa = app.add_subcommand("tolsa", "arc scan of the Cauchy transform");
  add_common(tolsa);

  std::vector<std::size_t> sizes;
  std::string csv;
  auto* norm = app.add_subcommand("norm", "section norms by power iteration");
  add_common(norm);
  norm->add_option("--sizes", sizes, "section sizes (exp family)")->delimiter(',');
  norm->add_option("--csv", csv, "also write the norm-vs-N series");

  std::string masses = "squared";
  std::string config;
  auto* pot = app.add_subcommand("potential", "disk scan, atom-sum criterion, mass ratios");
  add_common(pot);
  pot->add_option("--masses", masses, "squared | clark | scaled:C | path to measure JSON");
  pot->add_option("--config", config, "scan config JSON");

  std::string plan_path;
  double fraction = 1.0;
  auto* pert = app.add_subcommand("perturb", "generate and check a perturbed measure");
  add_common(pert);
  pert->add_option("--plan", plan_path, "plan JSON; random plan from --seed when absent");
  pert->add_option("--fraction", fraction, "alpha as a fraction of the cap")->check(CLI::Range(0.0, 1.0));

  std::string example_name;
  auto* ex = app.add_subcommand("example", "run a family's full pipeline");
  add_common(ex);
  ex->add_option("name", example_name, "exp | monomial:K | counterexample:ALPHA:K")->required();

  std::vector<std::string> inputs;
  auto* rep = app.add_subcommand("report", "aggregate JSON reports into a CSV series table");
  rep->add_option("--in", inputs, "report files")->required();
  rep->add_option("--out", c.out, "CSV path (stdout when absent)");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  std::string command;
  try {
    if (rep->parsed()) {
      std::ostringstream table;
      table << "source,series,x,y\n";
      for (const std::string& path : inputs) append_series(table, path, read_json_file(path).value("outputs", Json::object()));
      if (c.out.empty()) {
        out << table.str();
      } else {
        std::ofstream f(c.out);
        if (!f) throw Error(ErrorCode::kInvalidInput, "cannot write " + c.out);
        f << table.str();
      }
      return kExitPass;
    }
    if (atoms->parsed()) {
      command = "atoms";
      o = run_atoms(c);
    } else if (bess->parsed()) {
      command = "bessonov";
      o = run_bessonov(c, measure_path, accumulation);
    } else if (tolsa->parsed()) {
      command = "tolsa";
      o = run_tolsa(c);
    } else if (norm->parsed()) {
      command = "norm";
      o = run_norm(c, sizes, csv);
    } else if (pot->parsed()) {
      command = "potential";
      o = run_potential(c, masses, config);
    } else if (pert->parsed()) {
      command = "perturb";
      o = run_perturb(c, plan_path, fraction);
    } else {
      command = "example";
      o = run_example(c, example_name);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json report;
  report["command"] = join_args(args);
  report["subcommand"] = command;
  report["version"] = kVersion;
  std::string digest_input = join_args(args);
  for (const std::string& path : {measure_path, plan_path, config}) {
    if (path.empty() || path == "squared" || path == "clark") continue;
    std::ifstream f(path, std::ios::binary);
    digest_input += std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  report["inputs_digest"] = fnv1a_hex(digest_input);
  report["wall_time_s"] = wall;
  report["truncation"] = {{"family", c.family}, {"truncation", c.truncation}, {"tol", c.tol}};
  report["outputs"] = o.outputs;
  report["verdict"] = o.pass ? "pass" : "fail";

  try {
    if (c.out.empty()) {
      out << report.dump(2) << '\n';
    } else {
      write_json_file(c.out, report);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return o.pass ? kExitPass : kExitVerdictFail;
}

}  // namespace clarklab::cli
