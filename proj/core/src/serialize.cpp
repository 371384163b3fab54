#include "aolab/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "aolab/error.hpp"

namespace aolab {
namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::invalid_input, "field '" + field + "': " + why);
}

const Json& require(const Json& j, const char* key, const std::string& where = "") {
  if (!j.is_object()) bad_field(where.empty() ? "<root>" : where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad_field(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

cplx complex_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad_field(field, "expected [re, im]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        emit(value, out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line; [re, im] pairs are the common case.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(value, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Mat& m) {
  Json j = Json::object();
  if (m.rows() == m.cols()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_json(m(r, c)));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json vector_json(const Vec& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(complex_json(v(i)));
  return j;
}

CMatrix matrix_from_json(const Json& j) {
  const Json& dim_field = require(j, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    bad_field("dim", "expected a positive integer");
  }
  const long long dim = dim_field.get<long long>();
  if (dim > kMaxDim) {
    throw Error(ErrorKind::size_limit,
                "field 'dim': " + std::to_string(dim) + " exceeds " + std::to_string(kMaxDim));
  }
  const Json& entries = require(j, "entries");
  if (!entries.is_array()) bad_field("entries", "expected an array");
  if (static_cast<long long>(entries.size()) != dim * dim) {
    bad_field("entries", "expected " + std::to_string(dim * dim) + " entries, got " +
                             std::to_string(entries.size()));
  }
  Mat m(dim, dim);
  for (long long k = 0; k < dim * dim; ++k) {
    const cplx z = complex_from(entries[static_cast<std::size_t>(k)], "entries[" + std::to_string(k) + "]");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      bad_field("entries[" + std::to_string(k) + "]", "not finite");
    }
    m(k / dim, k % dim) = z;
  }
  return CMatrix(std::move(m));
}

CMatrix parse_matrix(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

Json minpoly_json(const MinimalPoly& p) {
  Json roots = Json::array();
  for (const auto& r : p.roots) {
    Json root = Json::object();
    root["z"] = complex_json(r.z);
    root["index"] = r.index;
    roots.push_back(std::move(root));
  }
  Json coeffs = Json::array();
  for (const cplx& c : p.coefficients()) coeffs.push_back(complex_json(c));
  Json j = Json::object();
  j["degree"] = p.degree();
  j["roots"] = std::move(roots);
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json decomposition_json(const Decomposition& d) {
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json block = Json::object();
    block["z"] = complex_json(b.z);
    block["index"] = b.index;
    block["basis"] = matrix_json(b.basis);
    block["projection"] = matrix_json(b.projection);
    blocks.push_back(std::move(block));
  }
  Json j = Json::object();
  j["blocks"] = std::move(blocks);
  j["constant_c"] = d.constant_c;
  return j;
}

Json decomposition_summary_json(const Decomposition& d) {
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json block = Json::object();
    block["z"] = complex_json(b.z);
    block["index"] = b.index;
    block["dim"] = b.dim();
    blocks.push_back(std::move(block));
  }
  Json j = Json::object();
  j["blocks"] = std::move(blocks);
  j["constant_c"] = d.constant_c;
  return j;
}

Json classification_json(const OrbitClassification& c) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(c.kind));
  switch (c.kind) {
    case OrbitClass::convergent: j["limit"] = c.limit; break;
    case OrbitClass::polynomial_growth: j["degree"] = c.degree; break;
    case OrbitClass::exponential_growth: j["rate"] = c.rate; break;
    case OrbitClass::bounded_nonconvergent: break;
  }
  return j;
}

Json report_json(const CriteriaReport& r) {
  Json j = Json::object();
  j["is_algebraic"] = r.is_algebraic;
  j["minpoly_degree"] = r.minpoly_degree;
  j["spectrum_in_circle"] = r.spectrum_in_circle;
  j["unitary"] = r.unitary;
  j["normaloid"] = r.normaloid;
  j["contraction"] = r.contraction;
  j["orbits_convergent"] = r.orbits_convergent;
  j["power_bounded"] = r.power_bounded;
  j["witness"] = r.witness ? vector_json(r.witness->vec()) : Json(nullptr);
  j["consistent"] = r.consistent;
  j["orbit_certification"] = r.orbit_certification;
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json probe = Json::object();
    probe["label"] = p.label;
    probe["classification"] = classification_json(p.record.classification);
    probe["structural_exponent"] =
        p.record.structural_exponent ? Json(*p.record.structural_exponent) : Json(nullptr);
    if (p.gram) probe["gram"] = *p.gram;
    probes.push_back(std::move(probe));
  }
  j["probes"] = std::move(probes);
  j["warnings"] = r.warnings;
  return j;
}

Json growth_json(const GrowthBound& g) {
  Json j = Json::object();
  j["kappa"] = g.kappa;
  j["alpha"] = g.alpha;
  j["spectral_radius"] = g.spectral_radius;
  j["valid_from"] = g.valid_from;
  j["checked_until"] = g.checked_until;
  j["max_violation_ratio"] = g.max_violation_ratio;
  j["holds"] = g.holds();
  return j;
}

Json stability_json(const StabilityVerdict& v) {
  Json j = Json::object();
  j["uniformly_stable"] = v.uniformly_stable;
  j["strongly_stable"] = v.strongly_stable;
  j["power_bounded"] = v.power_bounded;
  j["empirical_uniform"] = v.empirical_uniform;
  Json limits = Json::object();
  for (const auto& [label, value] : v.limit_projection_norm_sq) limits[label] = value;
  j["limit_norm_sq"] = std::move(limits);
  return j;
}

Json instance_json(const InstanceSpec& s) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(s.kind));
  j["dim"] = s.dim;
  Json eigs = Json::array();
  for (const cplx& z : s.eigenvalues) eigs.push_back(complex_json(z));
  j["eigenvalues"] = std::move(eigs);
  j["seed"] = s.seed;
  j["cond_cap"] = s.cond_cap;
  j["scale"] = s.scale;
  j["theta"] = s.theta;
  return j;
}

InstanceSpec instance_from_json(const Json& j) {
  InstanceSpec s;
  const Json& kind = require(j, "kind");
  if (!kind.is_string()) bad_field("kind", "expected a string");
  const auto parsed = parse_instance_kind(kind.get<std::string>());
  if (!parsed) bad_field("kind", "unknown kind '" + kind.get<std::string>() + "'");
  s.kind = *parsed;
  const Json& dim = require(j, "dim");
  if (!dim.is_number_integer()) bad_field("dim", "expected an integer");
  s.dim = dim.get<int>();
  if (const auto it = j.find("eigenvalues"); it != j.end()) {
    if (!it->is_array()) bad_field("eigenvalues", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      s.eigenvalues.push_back(complex_from((*it)[k], "eigenvalues[" + std::to_string(k) + "]"));
    }
  }
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) bad_field("seed", "expected an unsigned integer");
    s.seed = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("cond_cap"); it != j.end()) s.cond_cap = number(*it, "cond_cap");
  if (const auto it = j.find("scale"); it != j.end()) s.scale = number(*it, "scale");
  if (const auto it = j.find("theta"); it != j.end()) s.theta = number(*it, "theta");
  return s;
}

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace aolab
