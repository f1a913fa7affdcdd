#pragma once

// JSON encodings. Non-finite numbers are written as the strings "inf",
// "-inf" and "nan"; finite doubles round-trip exactly.

#include <nlohmann/json.hpp>
#include <string>

#include "clarklab/bessonov.hpp"
#include "clarklab/cauchy.hpp"
#include "clarklab/circle.hpp"
#include "clarklab/clark.hpp"
#include "clarklab/families.hpp"
#include "clarklab/inner.hpp"
#include "clarklab/perturbation.hpp"
#include "clarklab/potentials.hpp"

namespace clarklab {

using Json = nlohmann::json;

Json number_to_json(double x);
/// Throws kInvalidInput on anything but a number or one of the non-finite tags.
double number_from_json(const Json& j);

Json to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const Json& j);

Json to_json(const InnerFunction& u);
InnerFunction inner_function_from_json(const Json& j);

/// The AtomicMeasure object plus alpha, derivatives, A, B, accumulation and
/// edge_uncertain. On load A and B are recomputed from the atoms.
Json to_json(const ClarkData& d);
ClarkData clark_data_from_json(const Json& j);

/// {alpha, t_offsets, eps, seed?}; the base is stored under "base" when present.
Json to_json(const PerturbationPlan& p);
/// `base` is used when the document has no "base" entry.
PerturbationPlan plan_from_json(const Json& j, const ClarkData* base = nullptr);

/// {grid_depth, cluster_depth, base_angular, max_angular, cluster_directions, support_tol}.
Json to_json(const ScanConfig& c);
ScanConfig scan_config_from_json(const Json& j);

Json to_json(const PotentialReport& r);
Json to_json(const Lemma61Result& r);
Json to_json(const MassRatioResult& r);
Json to_json(const RadialLimitResult& r);
Json to_json(const BessonovReport& r);
Json to_json(const AdmissibilityReport& r);
Json to_json(const TolsaReport& r);
Json to_json(const OperatorNormEstimate& r);
Json to_json(const FeichtingerReport& r);
Json to_json(const DivergenceReport& r);

/// Parses a file; throws kInvalidInput on IO or syntax errors.
Json read_json_file(const std::string& path);
/// Writes with two-space indentation; throws kInvalidInput on IO errors.
void write_json_file(const std::string& path, const Json& j);

}  // namespace clarklab
