#include "aolab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "aolab/error.hpp"

namespace aolab {
namespace {

constexpr double kOverflow = 1e300;
constexpr double kUnimodularTol = 1e-8;
constexpr double kPolyRelSpread = 5e-2;
constexpr double kExpSlope = 1e-3;
constexpr double kBoundedGrowth = 1.1;
constexpr double kComponentRel = 1e-10;
constexpr int kPowerHorizon = 1000;

double rate_above_one(double r) { return std::max(r, std::nextafter(1.0, 2.0)); }

struct TailData {
  std::vector<double> n;
  std::vector<double> log_s;
};

// n >= 1 over [from, to]; empty when a zero norm is hit.
TailData log_tail(std::span<const double> norms, std::size_t from, std::size_t to) {
  TailData t;
  for (std::size_t i = std::max<std::size_t>(from, 1); i <= to; ++i) {
    if (!(norms[i] > 1e-300)) return {};
    t.n.push_back(static_cast<double>(i));
    t.log_s.push_back(std::log(norms[i]));
  }
  return t;
}

OrbitClassification overflow_classification(std::span<const double> norms) {
  std::size_t last = 0;
  while (last + 1 < norms.size() && std::isfinite(norms[last + 1]) && norms[last + 1] <= kOverflow) {
    ++last;
  }
  const auto tail = log_tail(norms, last / 2, last);
  if (tail.n.size() < 2) return OrbitClassification::exponential(std::numeric_limits<double>::infinity());
  return OrbitClassification::exponential(rate_above_one(std::exp(regression_slope(tail.n, tail.log_s))));
}

struct Component {
  std::size_t block;
  Vec v;
};

struct RelevantComponents {
  std::vector<Component> parts;
  double radius = 0.0;
};

RelevantComponents relevant_components(const Decomposition& d, const Vec& h) {
  RelevantComponents rc;
  const double threshold = kComponentRel * h.norm();
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    Vec v = d.blocks[j].projection * h;
    if (v.norm() > threshold) {
      rc.radius = std::max(rc.radius, std::abs(d.blocks[j].z));
      rc.parts.push_back({j, std::move(v)});
    }
  }
  return rc;
}

bool at_radius(cplx z, double radius) {
  return std::abs(std::abs(z) - radius) <= kUnimodularTol * std::max(1.0, radius);
}

int exponent_of(const CMatrix& a, const Decomposition& d, const RelevantComponents& rc, double h_norm) {
  const double threshold = kComponentRel * h_norm;
  int exponent = 0;
  for (const auto& part : rc.parts) {
    const auto& block = d.blocks[part.block];
    if (!at_radius(block.z, rc.radius)) continue;
    Vec v = part.v;
    for (int k = 1; k < block.index; ++k) {
      v = a.mat() * v - block.z * v;
      if (v.norm() <= threshold) break;
      exponent = std::max(exponent, k);
    }
  }
  return exponent;
}

void check_probe(const CMatrix& a, const Vec& h) {
  if (h.size() != a.dim()) throw Error(ErrorKind::invalid_input, "vector and matrix dimensions differ");
  if (!(h.norm() > 0.0)) throw Error(ErrorKind::precondition, "orbit probe must be nonzero");
}

OrbitRecord analyze_orbit(const CMatrix& a, const CVector& h, int n_max, const AnalysisConfig& cfg,
                          const Decomposition* d, int max_poly_degree) {
  check_probe(a, h.vec());
  if (n_max < 100) throw Error(ErrorKind::precondition, "orbit horizon n_max must be >= 100");
  if (cfg.window >= n_max) throw Error(ErrorKind::invalid_input, "window must be < n_max");

  OrbitRecord rec{h, {}, std::nullopt, {}};
  rec.norms.reserve(static_cast<std::size_t>(n_max) + 1);
  Vec x = h.vec();
  rec.norms.push_back(x.norm());
  bool overflow = false;
  for (int n = 1; n <= n_max; ++n) {
    x = a.mat() * x;
    const double s = x.norm();
    if (!std::isfinite(s) || s > kOverflow) {
      overflow = true;
      break;
    }
    rec.norms.push_back(s);
  }
  if (d != nullptr) rec.structural_exponent = structural_exponent(a, *d, h.vec());
  if (overflow) {
    rec.norms.push_back(std::numeric_limits<double>::infinity());
    rec.classification = overflow_classification(rec.norms);
    rec.norms.pop_back();
  } else {
    rec.classification = classify_orbit(rec.norms, max_poly_degree, cfg);
  }
  return rec;
}

std::vector<Vec> random_unit_vectors(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    out.push_back(v / v.norm());
  }
  return out;
}

}  // namespace

std::string_view to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::convergent: return "convergent";
    case OrbitClass::bounded_nonconvergent: return "bounded-nonconvergent";
    case OrbitClass::polynomial_growth: return "polynomial-growth";
    case OrbitClass::exponential_growth: return "exponential-growth";
  }
  return "unknown";
}

OrbitClassification OrbitClassification::convergent_to(double limit) {
  return {OrbitClass::convergent, limit, 0, 0.0};
}
OrbitClassification OrbitClassification::bounded() {
  return {OrbitClass::bounded_nonconvergent, 0.0, 0, 0.0};
}
OrbitClassification OrbitClassification::polynomial(int degree) {
  return {OrbitClass::polynomial_growth, 0.0, degree, 0.0};
}
OrbitClassification OrbitClassification::exponential(double rate) {
  return {OrbitClass::exponential_growth, 0.0, 0, rate};
}

bool OrbitClassification::same_shape(const OrbitClassification& other) const {
  if (kind != other.kind) return false;
  return kind != OrbitClass::polynomial_growth || degree == other.degree;
}

OrbitClassification classify_orbit(std::span<const double> norms, int max_poly_degree,
                                   const AnalysisConfig& cfg) {
  if (norms.empty()) throw Error(ErrorKind::invalid_input, "empty norm sequence");
  for (double s : norms) {
    if (!std::isfinite(s) || s > kOverflow) return overflow_classification(norms);
  }
  const std::size_t last = norms.size() - 1;
  const std::size_t half = last / 2;
  const int max_degree = std::max(0, max_poly_degree);
  const auto tail = log_tail(norms, half, last);

  if (tail.n.size() >= 2) {
    std::vector<double> stripped(tail.log_s);
    for (std::size_t i = 0; i < stripped.size(); ++i) {
      stripped[i] -= static_cast<double>(max_degree) * std::log(tail.n[i]);
    }
    if (regression_slope(tail.n, stripped) > kExpSlope) {
      return OrbitClassification::exponential(
          rate_above_one(std::exp(regression_slope_with_log(tail.n, tail.log_s))));
    }
    for (int d = 1; d <= max_degree; ++d) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      double sum = 0.0;
      for (std::size_t i = 0; i < tail.n.size(); ++i) {
        const double a = std::exp(tail.log_s[i] - d * std::log(tail.n[i]));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        sum += a;
      }
      const double mean = sum / static_cast<double>(tail.n.size());
      if (mean > 1e-300 && hi - lo <= kPolyRelSpread * mean) return OrbitClassification::polynomial(d);
    }
  }

  if (static_cast<std::size_t>(cfg.window) <= norms.size()) {
    const auto wv = window_rule(norms, cfg.window, cfg.tol_conv);
    if (wv.convergent) return OrbitClassification::convergent_to(wv.limit);
  }

  double head_max = 0.0;
  double tail_max = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    double& slot = i < half ? head_max : tail_max;
    slot = std::max(slot, norms[i]);
  }
  if (tail_max <= kBoundedGrowth * head_max) return OrbitClassification::bounded();
  const double slope = tail.n.size() >= 2 ? regression_slope(tail.n, tail.log_s) : 0.0;
  return OrbitClassification::exponential(rate_above_one(std::exp(slope)));
}

int structural_exponent(const CMatrix& a, const Decomposition& d, const Vec& h) {
  check_probe(a, h);
  return exponent_of(a, d, relevant_components(d, h), h.norm());
}

OrbitRecord orbit_analyze(const CMatrix& a, const CVector& h, int n_max, const AnalysisConfig& cfg,
                          const Decomposition* structure) {
  cfg.validate();
  if (structure != nullptr) {
    int degree = 0;
    for (const auto& b : structure->blocks) degree += b.index;
    return analyze_orbit(a, h, n_max, cfg, structure, degree - 1);
  }
  try {
    const auto p = minimal_polynomial(a, cfg.tol_rank);
    const auto d = decompose(a, p, cfg.tol_rank);
    return analyze_orbit(a, h, n_max, cfg, &d, p.degree() - 1);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::precondition || e.kind() == ErrorKind::invalid_input) throw;
    return analyze_orbit(a, h, n_max, cfg, nullptr, a.dim() - 1);
  }
}

OrbitPrediction predict_orbit(const CMatrix& a, const Decomposition& d, const Vec& h) {
  check_probe(a, h);
  const auto rc = relevant_components(d, h);
  OrbitPrediction pred;
  pred.relevant_radius = rc.radius;
  pred.exponent = exponent_of(a, d, rc, h.norm());

  if (rc.radius > 1.0 + kUnimodularTol) {
    pred.expected = OrbitClassification::exponential(rc.radius);
    return pred;
  }
  if (rc.radius < 1.0 - kUnimodularTol) {
    pred.expected = OrbitClassification::convergent_to(0.0);
    return pred;
  }
  if (pred.exponent >= 1) {
    pred.expected = OrbitClassification::polynomial(pred.exponent);
    return pred;
  }

  // ||A^n h||^2 -> sum_{k,l} (z_k conj z_l)^n <u_k, u_l> over unimodular
  // eigenvector components; it converges iff every non-constant frequency
  // has a vanishing coefficient.
  std::vector<const Component*> unimodular;
  for (const auto& part : rc.parts) {
    if (at_radius(d.blocks[part.block].z, 1.0)) unimodular.push_back(&part);
  }
  std::vector<cplx> freqs;
  std::vector<cplx> coeffs;
  double limit_sq = 0.0;
  for (std::size_t k = 0; k < unimodular.size(); ++k) {
    limit_sq += unimodular[k]->v.squaredNorm();
    for (std::size_t l = 0; l < unimodular.size(); ++l) {
      if (k == l) continue;
      const cplx w = d.blocks[unimodular[k]->block].z * std::conj(d.blocks[unimodular[l]->block].z);
      const cplx g = inner(unimodular[k]->v, unimodular[l]->v);
      auto it = std::find_if(freqs.begin(), freqs.end(),
                             [&](cplx f) { return std::abs(f - w) <= kUnimodularTol; });
      if (it == freqs.end()) {
        freqs.push_back(w);
        coeffs.push_back(g);
      } else {
        coeffs[static_cast<std::size_t>(it - freqs.begin())] += g;
      }
    }
  }
  double worst = 0.0;
  for (const cplx& c : coeffs) worst = std::max(worst, std::abs(c));
  pred.expected = worst <= kUnimodularTol * h.squaredNorm()
                      ? OrbitClassification::convergent_to(std::sqrt(limit_sq))
                      : OrbitClassification::bounded();
  return pred;
}

bool is_unitary(const CMatrix& a) {
  const auto n = a.dim();
  const Mat id = Mat::Identity(n, n);
  const double tol = 1e-10 * n;
  return (a.mat().adjoint() * a.mat() - id).norm() <= tol &&
         (a.mat() * a.mat().adjoint() - id).norm() <= tol;
}

namespace {

NormaloidCheck normaloid_from_radius(const CMatrix& a, double radius) {
  NormaloidCheck c;
  c.spectral_radius = radius;
  c.norm = operator_norm(a);
  c.normaloid = std::abs(c.spectral_radius - c.norm) <= 1e-8 * std::max(1.0, c.norm);
  bool equal_powers = true;
  Mat power = a.mat();
  double norm_pow = c.norm;
  for (int n = 2; n <= 10; ++n) {
    power = a.mat() * power;
    norm_pow *= c.norm;
    if (std::abs(operator_norm(power) - norm_pow) > 1e-6 * std::max(norm_pow, 1e-300)) {
      equal_powers = false;
    }
  }
  c.powers_agree = (c.normaloid == equal_powers);
  return c;
}

double radius_of(const MinimalPoly& p) {
  double r = 0.0;
  for (const auto& root : p.roots) r = std::max(r, std::abs(root.z));
  return r;
}

}  // namespace

NormaloidCheck normaloid_check(const CMatrix& a) {
  return normaloid_from_radius(a, spectrum(a).spectral_radius);
}

bool is_normaloid(const CMatrix& a) { return normaloid_check(a).normaloid; }

PowerBoundedness power_boundedness(const CMatrix& a, const MinimalPoly& p) {
  PowerBoundedness pb;
  pb.structural = radius_of(p) <= 1.0 + 1e-10;
  for (const auto& root : p.roots) {
    if (std::abs(root.z) >= 1.0 - kUnimodularTol && root.index > 1) pb.structural = false;
  }

  Mat power = Mat::Identity(a.dim(), a.dim());
  double head = 1.0;
  double tail = 0.0;
  bool overflow = false;
  for (int n = 1; n <= kPowerHorizon; ++n) {
    power = a.mat() * power;
    const double s = operator_norm(power);
    if (!std::isfinite(s) || s > kOverflow) {
      overflow = true;
      break;
    }
    double& slot = n <= kPowerHorizon / 2 ? head : tail;
    slot = std::max(slot, s);
  }
  pb.max_power_norm = overflow ? std::numeric_limits<double>::infinity() : std::max(head, tail);
  pb.empirical_growth = overflow || tail > 1.5 * head;
  pb.empirical_flat = !overflow && tail <= head;
  pb.agree = pb.structural ? !pb.empirical_growth : !pb.empirical_flat;
  return pb;
}

bool is_power_bounded(const CMatrix& a) {
  const auto pb = power_boundedness(a, minimal_polynomial(a));
  if (!pb.agree) {
    throw Error(ErrorKind::inconsistency,
                std::string("structural power-boundedness (") + (pb.structural ? "bounded" : "unbounded") +
                    ") contradicts max_{n<=1000} ||A^n|| = " + std::to_string(pb.max_power_norm));
  }
  return pb.structural;
}

CriteriaReport theorem_check(const CMatrix& a, const AnalysisConfig& cfg) {
  cfg.validate();
  CriteriaReport rep;
  const int n = a.dim();

  std::optional<MinimalPoly> p;
  std::optional<Decomposition> d;
  try {
    p = minimal_polynomial(a, cfg.tol_rank);
    d = decompose(a, *p, cfg.tol_rank);
  } catch (const Error& e) {
    rep.warnings.emplace_back(e.what());
  }

  // Finite-dimensional operators are always algebraic (Cayley-Hamilton).
  rep.is_algebraic = true;
  rep.minpoly_degree = p ? p->degree() : 0;

  double radius = 0.0;
  if (p) {
    rep.spectrum_in_circle = std::all_of(p->roots.begin(), p->roots.end(), [](const Root& r) {
      return std::abs(std::abs(r.z) - 1.0) <= kUnimodularTol;
    });
    radius = radius_of(*p);
  } else {
    const auto raw = raw_eigenvalues(a.mat());
    rep.spectrum_in_circle = std::all_of(raw.begin(), raw.end(), [](cplx z) {
      return std::abs(std::abs(z) - 1.0) <= 1e-6;
    });
    for (cplx z : raw) radius = std::max(radius, std::abs(z));
  }

  rep.unitary = is_unitary(a);
  const auto nc = normaloid_from_radius(a, radius);
  rep.normaloid = nc.normaloid;
  if (!nc.powers_agree) {
    rep.warnings.emplace_back("normaloid: ||A^n|| = ||A||^n test (n <= 10) disagrees with r(A) = ||A||");
  }
  rep.contraction = nc.norm <= 1.0 + 1e-10;

  if (p) {
    const auto pb = power_boundedness(a, *p);
    rep.power_bounded = pb.structural;
    if (!pb.agree) {
      rep.warnings.emplace_back("power boundedness: structural and empirical answers disagree");
    }
  } else {
    rep.power_bounded = false;
  }

  const int max_degree = p ? p->degree() - 1 : n - 1;
  const Decomposition* structure = d ? &*d : nullptr;
  auto run_probe = [&](std::string label, const Vec& h, std::optional<double> gram) {
    rep.probes.push_back(
        {std::move(label), analyze_orbit(a, CVector(h), cfg.n_max, cfg, structure, max_degree), gram});
  };

  for (int i = 0; i < n; ++i) run_probe("e" + std::to_string(i), CVector::basis(n, i).vec(), std::nullopt);
  const auto randoms = random_unit_vectors(n, cfg.random_probes, cfg.seed);
  for (std::size_t i = 0; i < randoms.size(); ++i) {
    run_probe("random" + std::to_string(i), randoms[i], std::nullopt);
  }
  if (d) {
    for (std::size_t k = 0; k < d->blocks.size(); ++k) {
      for (std::size_t l = k + 1; l < d->blocks.size(); ++l) {
        const Mat& bk = d->blocks[k].basis;
        const Mat& bl = d->blocks[l].basis;
        Eigen::JacobiSVD<Mat> svd(bk.adjoint() * bl, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Vec hk = bk * svd.matrixU().col(0);
        const Vec hl = bl * svd.matrixV().col(0);
        const double gram = std::abs(inner(hk, hl));
        const std::string pair = std::to_string(k) + "," + std::to_string(l);
        run_probe("mix(" + pair + ")", hk + hl, gram);
        run_probe("mix-i(" + pair + ")", cplx(0.0, 1.0) * hk + hl, gram);
      }
    }
  }

  rep.orbits_convergent = true;
  for (const auto& probe : rep.probes) {
    if (probe.record.classification.kind != OrbitClass::convergent) {
      rep.orbits_convergent = false;
      if (!rep.witness) rep.witness = probe.record.h;
    }
  }

  bool ok = static_cast<bool>(d);
  if (rep.hypotheses_hold()) {
    ok = ok && rep.unitary == rep.normaloid && rep.normaloid == rep.contraction &&
         rep.contraction == rep.orbits_convergent;
  }
  if (rep.unitary) ok = ok && rep.normaloid && rep.contraction;
  if (rep.contraction || rep.orbits_convergent) ok = ok && rep.power_bounded;
  rep.consistent = ok;
  return rep;
}

std::vector<double> scalar_re_values(cplx w, cplx b, int n_max) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_max) + 1);
  cplx p = b;
  for (int n = 0; n <= n_max; ++n) {
    values.push_back(p.real());
    p *= w;
  }
  return values;
}

ScalarSeqVerdict scalar_re_sequence(cplx w, cplx b, int n_max, const AnalysisConfig& cfg) {
  if (std::abs(std::abs(w) - 1.0) > 1e-12) {
    throw Error(ErrorKind::precondition, "w must lie on the unit circle");
  }
  if (std::abs(w - 1.0) <= 1e-12 || std::abs(w + 1.0) <= 1e-12) {
    throw Error(ErrorKind::precondition, "w must differ from +1 and -1");
  }
  if (n_max <= cfg.window) throw Error(ErrorKind::precondition, "n_max must exceed the window");
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
    throw Error(ErrorKind::invalid_input, "b must be finite");
  }

  ScalarSeqVerdict v;
  v.w = w;
  v.b = b;
  const auto values = scalar_re_values(w, b, n_max);
  const auto wv = window_rule(values, cfg.window, cfg.tol_conv);
  v.convergent = wv.convergent;
  v.limit = wv.limit;
  const std::span<const double> all(values);
  v.cluster_points = leader_clusters(all.subspan(values.size() / 2), 1e-6);
  v.zero_amplitude_consistent = !v.convergent || std::abs(b) <= 1e-6;
  return v;
}

}  // namespace aolab
