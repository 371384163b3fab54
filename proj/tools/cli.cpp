#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "aolab/algebraic.hpp"
#include "aolab/criteria.hpp"
#include "aolab/error.hpp"
#include "aolab/generators.hpp"
#include "aolab/serialize.hpp"
#include "aolab/stability.hpp"

namespace aolab::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::invalid_input, "cannot parse complex number '" + std::string(whole) + "'");
  }
  return x;
}

// Coefficient of i: "", "+" and "-" stand for +-1.
double parse_imag(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::size_limit:
    case ErrorKind::precondition:
    case ErrorKind::contradiction:
    case ErrorKind::out_of_scope:
      return true;
    default:
      return false;
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool write_text(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

Json config_json(const AnalysisConfig& c) {
  Json j = Json::object();
  j["n_max"] = c.n_max;
  j["window"] = c.window;
  j["tol_conv"] = c.tol_conv;
  j["tol_rank"] = c.tol_rank;
  j["seed"] = c.seed;
  j["random_probes"] = c.random_probes;
  return j;
}

int cmd_analyze(const std::string& input, const std::string& out_path, const std::string& csv_path,
                const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream f(input, std::ios::binary);
  if (!f) {
    err << "error: cannot read '" << input << "'\n";
    return kInputError;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  const CMatrix a = parse_matrix(buf.str());
  cfg.analysis.validate();

  Json doc = Json::object();
  doc["dim"] = a.dim();
  doc["config"] = config_json(cfg.analysis);

  std::optional<MinimalPoly> p;
  std::optional<Decomposition> d;
  try {
    p = minimal_polynomial(a, cfg.analysis.tol_rank);
    d = decompose(a, *p, cfg.analysis.tol_rank);
  } catch (const Error& e) {
    doc["structure_error"] = e.what();
  }
  doc["minimal_polynomial"] = p ? minpoly_json(*p) : Json(nullptr);
  doc["decomposition"] = d ? decomposition_summary_json(*d) : Json(nullptr);

  const auto report = theorem_check(a, cfg.analysis);
  doc["criteria"] = report_json(report);

  std::optional<GrowthBound> g;
  try {
    g = growth_bound(a, 1000, cfg.analysis.tol_rank);
    doc["growth_bound"] = growth_json(*g);
  } catch (const Error& e) {
    Json skipped = Json::object();
    skipped["skipped"] = e.what();
    doc["growth_bound"] = std::move(skipped);
  }
  try {
    doc["stability"] = stability_json(uniform_stability(a, cfg.analysis));
  } catch (const Error& e) {
    Json skipped = Json::object();
    skipped["skipped"] = e.what();
    doc["stability"] = std::move(skipped);
  }

  if (!write_text(out_path, dump(doc), out, err)) return kInputError;

  if (!csv_path.empty()) {
    std::string csv = "n,power_norm,bound\n";
    const GrowthBound placeholder;
    for (const auto& row : growth_series(a, g ? *g : placeholder, cfg.analysis.n_max)) {
      csv += std::to_string(row.n) + "," + fmt(row.power_norm) + "," + (g ? fmt(row.bound) : "") + "\n";
    }
    if (!write_text(csv_path, csv, out, err)) return kInputError;
  }
  if (!report.consistent) {
    err << "error: criteria report is internally inconsistent\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_generate(const std::string& kind_name, const InstanceSpec& base, const std::string& eigs,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto kind = parse_instance_kind(kind_name);
  if (!kind) {
    err << "error: unknown kind '" << kind_name << "'\n";
    return kInputError;
  }
  InstanceSpec spec = base;
  spec.kind = *kind;
  if (!eigs.empty()) spec.eigenvalues = parse_eigenvalues(eigs);
  const CMatrix a = generate(spec);
  return write_text(out_path, dump(matrix_json(a.mat())), out, err) ? kOk : kInputError;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
  const auto tallies = run_suite(suite, cfg);
  bool ok = true;
  for (const auto& t : tallies) {
    out << t.name << ": " << t.passed << "/" << t.total << "\n";
    ok = ok && t.passed == t.total;
  }
  out << (ok ? "all properties pass\n" : "suite FAILED\n");
  return ok ? kOk : kSuiteFailure;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::invalid_input, "empty complex number");
  if (s.front() == '@') {
    const double turns = parse_real(s.substr(1), s);
    return gen_scalar_rotation(1, turns)(0, 0);
  }
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const std::string_view body = s.substr(0, s.size() - 1);
  // The split is the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, s)};
  return {parse_real(body.substr(0, split), s), parse_imag(body.substr(split), s)};
}

std::vector<cplx> parse_eigenvalues(std::string_view csv) {
  std::vector<cplx> out;
  while (true) {
    const auto comma = csv.find(',');
    out.push_back(parse_complex(csv.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral criteria for unitarity of square complex matrices", "aolab"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string seed_text;
  std::string input, out_path, csv_path, kind, eigs, suite = "all";
  InstanceSpec spec;

  auto add_analysis_flags = [&](CLI::App* sub) {
    sub->add_option("--nmax", cfg.analysis.n_max, "orbit horizon");
    sub->add_option("--window", cfg.analysis.window, "convergence window");
    sub->add_option("--tol-conv", cfg.analysis.tol_conv, "convergence tolerance");
    sub->add_option("--tol-rank", cfg.analysis.tol_rank, "relative rank tolerance");
  };

  auto* analyze = app.add_subcommand("analyze", "analyze a matrix JSON file");
  analyze->add_option("--input", input, "matrix JSON")->required();
  analyze->add_option("--out", out_path, "write the report here instead of stdout");
  analyze->add_option("--csv", csv_path, "write (n, ||A^n||, bound) rows here");
  add_analysis_flags(analyze);
  analyze->add_option("--seed", seed_text, "random probe seed");

  auto* gen = app.add_subcommand("generate", "emit a seeded instance as matrix JSON");
  gen->add_option("--kind", kind, "instance family")->required();
  gen->add_option("--dim", spec.dim, "dimension");
  gen->add_option("--eigenvalues", eigs, "comma separated, e.g. 1,-1,i,@0.125");
  gen->add_option("--theta", spec.theta, "rotation angle in turns");
  gen->add_option("--cond-cap", spec.cond_cap, "similarity condition number cap");
  gen->add_option("--scale", spec.scale, "nilpotent norm, normaloid radius or planted radius");
  gen->add_option("--seed", seed_text, "generator seed");
  gen->add_option("--out", out_path, "write here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run seeded property suites");
  verify->add_option("--suite", suite, "theorem, growth, stability, scalar or all")
      ->check(CLI::IsMember({"theorem", "growth", "stability", "scalar", "all"}));
  verify->add_option("--trials", cfg.trials, "trials per property")->check(CLI::PositiveNumber);
  add_analysis_flags(verify);
  verify->add_option("--seed", seed_text, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (seed_text.empty()) {
      if (const char* env = std::getenv("AOLAB_SEED")) seed_text = env;
    }
    if (!seed_text.empty()) {
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
      if (ec != std::errc() || ptr != seed_text.data() + seed_text.size()) {
        throw Error(ErrorKind::invalid_input, "seed '" + seed_text + "' is not an unsigned integer");
      }
      cfg.analysis.seed = seed;
      spec.seed = seed;
    }
    if (*analyze) return cmd_analyze(input, out_path, csv_path, cfg, out, err);
    if (*gen) return cmd_generate(kind, spec, eigs, out_path, out, err);
    cfg.analysis.validate();
    return cmd_verify(suite, cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  }
}

}  // namespace aolab::cli
