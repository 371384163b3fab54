#include <cmath>
#include <numbers>
#include <random>

#include "aolab/criteria.hpp"
#include "aolab/error.hpp"
#include "aolab/generators.hpp"
#include "aolab/stability.hpp"
#include "cli.hpp"

namespace aolab::cli {
namespace {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Each check maps a trial seed to pass/fail; library errors count as failures.
template <typename Check>
PropertyTally tally(std::string name, const RunConfig& cfg, std::uint64_t salt, Check check) {
  PropertyTally t{std::move(name), 0, cfg.trials};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed = mix_seed(cfg.analysis.seed ^ salt, static_cast<std::uint64_t>(trial));
    bool ok = false;
    try {
      ok = check(seed);
    } catch (const Error&) {
      ok = false;
    }
    t.passed += ok ? 1 : 0;
  }
  return t;
}

std::vector<PropertyTally> theorem_suite(const RunConfig& cfg) {
  std::vector<PropertyTally> out;
  out.push_back(tally("unitary instances satisfy all four conditions", cfg, 0x11, [&](std::uint64_t s) {
    Rng rng(s);
    const int dim = uniform_int(rng, 1, 8);
    const auto eigs = spread_unimodular(uniform_int(rng, 1, dim), 0.2, s + 1);
    const auto r = theorem_check(gen_unitary_finite_spectrum(dim, eigs, s + 2), cfg.analysis);
    return r.unitary && r.normaloid && r.contraction && r.orbits_convergent && r.power_bounded &&
           r.consistent;
  }));
  out.push_back(tally("oblique instances are power bounded counterexamples", cfg, 0x12, [&](std::uint64_t s) {
    Rng rng(s);
    const int dim = uniform_int(rng, 2, 8);
    const auto eigs = spread_unimodular(dim, 0.2, s + 1);
    const auto r = theorem_check(gen_oblique(dim, eigs, 50.0, s + 2, true), cfg.analysis);
    return r.power_bounded && !r.unitary && !r.orbits_convergent && r.witness.has_value() && r.consistent;
  }));
  return out;
}

std::vector<PropertyTally> growth_suite(const RunConfig& cfg) {
  std::vector<PropertyTally> out;
  out.push_back(tally("growth bound holds up to n = 1000", cfg, 0x21, [&](std::uint64_t s) {
    Rng rng(s);
    const int dim = uniform_int(rng, 1, 8);
    const double radius = uniform_int(rng, 0, 4) == 0 ? 0.0 : 1.0 - 0.9 * uniform(rng);
    const auto planted = gen_planted_jordan(dim, radius, 100.0, s + 1);
    return growth_bound(planted.matrix, 1000, cfg.analysis.tol_rank).holds();
  }));
  return out;
}

std::vector<PropertyTally> stability_suite(const RunConfig& cfg) {
  std::vector<PropertyTally> out;
  out.push_back(tally("normal contraction limits match <Qh, h>", cfg, 0x31, [&](std::uint64_t s) {
    Rng rng(s);
    const int dim = uniform_int(rng, 1, 8);
    const int unimodular = uniform_int(rng, 0, dim);
    const CMatrix a = gen_normal(dim, unimodular, 0.9, s + 1);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < 10; ++k) {
      Vec h(dim);
      for (int i = 0; i < dim; ++i) h(i) = cplx(gauss(rng), gauss(rng));
      if (!normal_limit(a, CVector(h)).agrees) return false;
    }
    const auto v = uniform_stability(a, cfg.analysis);
    return v.strongly_stable == (unimodular == 0);
  }));
  out.push_back(tally("normaloid equivalence", cfg, 0x32, [&](std::uint64_t s) {
    Rng rng(s);
    static constexpr double kRadii[3] = {0.5, 1.0, 2.0};
    const double rho = kRadii[uniform_int(rng, 0, 2)];
    const CMatrix a = gen_normaloid_nonnormal(uniform_int(rng, 3, 8), rho, s + 1);
    return normaloid_equivalence(a, cfg.analysis).all_agree();
  }));
  return out;
}

std::vector<PropertyTally> scalar_suite(const RunConfig& cfg) {
  constexpr int kHorizon = 100000;
  std::vector<PropertyTally> out;
  auto draw_w = [](Rng& rng) {
    while (true) {
      const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * uniform(rng));
      if (std::abs(w - 1.0) > 1e-6 && std::abs(w + 1.0) > 1e-6) return w;
    }
  };
  out.push_back(tally("Re(w^n b) diverges for b != 0", cfg, 0x41, [&](std::uint64_t s) {
    Rng rng(s);
    const cplx w = draw_w(rng);
    const cplx b = std::polar(0.1 + 1.9 * uniform(rng), 2.0 * std::numbers::pi * uniform(rng));
    const auto v = scalar_re_sequence(w, b, kHorizon, cfg.analysis);
    return !v.convergent && v.zero_amplitude_consistent;
  }));
  out.push_back(tally("Re(w^n 0) converges", cfg, 0x42, [&](std::uint64_t s) {
    Rng rng(s);
    return scalar_re_sequence(draw_w(rng), 0.0, kHorizon, cfg.analysis).convergent;
  }));
  return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 finalizer over seed + golden-ratio stride
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<PropertyTally> run_suite(std::string_view suite, const RunConfig& cfg) {
  std::vector<PropertyTally> out;
  auto append = [&](std::vector<PropertyTally> part) {
    for (auto& t : part) out.push_back(std::move(t));
  };
  const bool all = suite == "all";
  if (all || suite == "theorem") append(theorem_suite(cfg));
  if (all || suite == "growth") append(growth_suite(cfg));
  if (all || suite == "stability") append(stability_suite(cfg));
  if (all || suite == "scalar") append(scalar_suite(cfg));
  if (out.empty()) throw Error(ErrorKind::invalid_input, "unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace aolab::cli
