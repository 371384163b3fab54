#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "aolab/algebraic.hpp"
#include "aolab/criteria.hpp"
#include "aolab/generators.hpp"
#include "aolab/matrix.hpp"
#include "aolab/stability.hpp"

namespace aolab {

using Json = nlohmann::ordered_json;

/// Matrix format: {"dim": d, "entries": [[re, im], ...]} with d*d entries in
/// row-major order. Works for rectangular bases too: "rows"/"cols" replace
/// "dim" when the shape is not square.
Json matrix_json(const Mat& m);
Json vector_json(const Vec& v);
Json complex_json(cplx z);

/// Throws invalid_input naming the offending field.
CMatrix matrix_from_json(const Json& j);
CMatrix parse_matrix(std::string_view text);

Json minpoly_json(const MinimalPoly& p);
Json decomposition_json(const Decomposition& d);
Json decomposition_summary_json(const Decomposition& d);  // z, index, dim per block + constant_c
Json classification_json(const OrbitClassification& c);
Json report_json(const CriteriaReport& r);
Json growth_json(const GrowthBound& g);
Json stability_json(const StabilityVerdict& v);
Json instance_json(const InstanceSpec& s);
InstanceSpec instance_from_json(const Json& j);

/// Deterministic text: keys in insertion order, doubles with 17 significant
/// digits, non-finite doubles as null, two-space indentation.
std::string dump(const Json& j);

}  // namespace aolab
