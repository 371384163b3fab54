#include "aolab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "aolab/algebraic.hpp"
#include "aolab/error.hpp"

namespace aolab {
namespace {

std::vector<std::pair<std::string, Vec>> probe_set(int dim, int randoms, std::uint64_t seed) {
  std::vector<std::pair<std::string, Vec>> probes;
  for (int i = 0; i < dim; ++i) probes.emplace_back("e" + std::to_string(i), CVector::basis(dim, i).vec());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < randoms; ++k) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    probes.emplace_back("random" + std::to_string(k), v / v.norm());
  }
  return probes;
}

double radius_of(const MinimalPoly& p) {
  double r = 0.0;
  for (const auto& root : p.roots) r = std::max(r, std::abs(root.z));
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Mat matrix_power(const Mat& m, int k) {
  Mat out = Mat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = m * out;
  return out;
}

}  // namespace

NormaloidEquivalence normaloid_equivalence(const CMatrix& a, const AnalysisConfig& cfg) {
  cfg.validate();
  if (!is_normaloid(a)) {
    throw Error(ErrorKind::precondition, "normaloid equivalence requires r(A) = ||A||");
  }
  const auto p = minimal_polynomial(a, cfg.tol_rank);
  const auto d = decompose(a, p, cfg.tol_rank);

  NormaloidEquivalence eq;
  eq.orbits_convergent = true;
  for (const auto& [label, h] : probe_set(a.dim(), cfg.random_probes, cfg.seed)) {
    const auto rec = orbit_analyze(a, CVector(h), cfg.n_max, cfg, &d);
    if (rec.classification.kind != OrbitClass::convergent) {
      eq.orbits_convergent = false;
      break;
    }
  }
  eq.power_bounded = power_boundedness(a, p).structural;
  eq.contraction = operator_norm(a) <= 1.0 + 1e-10;
  if (!eq.all_agree()) {
    throw Error(ErrorKind::inconsistency,
                std::string("normaloid equivalence broken: orbits_convergent=") +
                    (eq.orbits_convergent ? "true" : "false") +
                    " power_bounded=" + (eq.power_bounded ? "true" : "false") +
                    " contraction=" + (eq.contraction ? "true" : "false"));
  }
  return eq;
}

Mat unimodular_projection(const CMatrix& a) {
  const auto n = a.dim();
  Eigen::ComplexSchur<Mat> schur(a.mat());
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "Schur decomposition did not converge");
  }
  // For a normal matrix the Schur form is diagonal and the Schur vectors
  // are orthonormal eigenvectors.
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();
  Mat q = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(t(i, i)) >= 1.0 - 1e-8) q += u.col(i) * u.col(i).adjoint();
  }
  return q;
}

NormalLimit normal_limit(const CMatrix& a, const CVector& h, int iterations) {
  if (h.dim() != a.dim()) throw Error(ErrorKind::invalid_input, "vector and matrix dimensions differ");
  if (!is_normal(a.mat())) throw Error(ErrorKind::precondition, "normal_limit requires a normal matrix");
  if (operator_norm(a) > 1.0 + 1e-10) {
    throw Error(ErrorKind::precondition, "normal_limit requires a contraction");
  }
  const Mat q = unimodular_projection(a);
  NormalLimit out;
  out.limit = std::max(0.0, inner(q * h.vec(), h.vec()).real());
  Vec x = h.vec();
  for (int n = 0; n < iterations; ++n) x = a.mat() * x;
  out.empirical = x.squaredNorm();
  out.agrees = std::abs(out.limit - out.empirical) <= 1e-6 * std::max(1.0, h.vec().squaredNorm());
  return out;
}

double GrowthBound::bound_at(int n) const {
  if (spectral_radius == 0.0) return n >= valid_from ? 0.0 : alpha;
  return alpha * std::pow(static_cast<double>(n), kappa) * std::pow(spectral_radius, n);
}

GrowthBound growth_bound(const CMatrix& a, int check_until, double rank_rel) {
  const auto p = minimal_polynomial(a, rank_rel);
  const double r = radius_of(p);
  if (r > 1.0 + 1e-10) {
    throw Error(ErrorKind::out_of_scope,
                "growth bound assumes r(A) <= 1, got r(A) = " + std::to_string(r));
  }
  const int degree = p.degree();
  const double norm = operator_norm(a);
  const double delta = cluster_radius(a.mat());

  GrowthBound g;
  g.kappa = degree - 1;
  g.checked_until = check_until;

  if (r <= delta) {
    g.spectral_radius = 0.0;
    g.valid_from = degree;
    g.alpha = 1.0;
    const double floor = 1e-10 * std::pow(std::max(1.0, norm), degree);
    Mat power = matrix_power(a.mat(), degree - 1);
    for (int n = degree; n <= check_until; ++n) {
      power = a.mat() * power;
      g.max_violation_ratio = std::max(g.max_violation_ratio, operator_norm(power) / floor);
    }
    return g;
  }

  const auto d = decompose(a, p, rank_rel);
  g.spectral_radius = r;
  g.valid_from = 1;
  g.alpha = 0.0;
  for (const auto& block : d.blocks) {
    Mat shift = compression(a.mat(), block.basis);
    shift.diagonal().array() -= block.z;
    const double mod = std::abs(block.z);
    double alpha_j = 0.0;
    if (mod > delta) {
      Mat nk = Mat::Identity(block.dim(), block.dim());
      for (int k = 0; k < block.index; ++k) {
        alpha_j += operator_norm(nk) / (factorial(k) * std::pow(mod, k));
        nk = shift * nk;
      }
    } else {
      // Nilpotent block inside an operator with r > 0: A_j^n = N_j^n vanishes
      // from n = i_j on, so only the first i_j - 1 powers need covering.
      Mat nk = Mat::Identity(block.dim(), block.dim());
      for (int k = 1; k < block.index; ++k) {
        nk = shift * nk;
        alpha_j = std::max(alpha_j, operator_norm(nk) / (std::pow(k, g.kappa) * std::pow(r, k)));
      }
    }
    g.alpha += operator_norm(block.projection) * alpha_j;
  }

  // Work with (A / r)^n so that neither side under- or overflows.
  const Mat scaled = a.mat() / r;
  Mat power = Mat::Identity(a.dim(), a.dim());
  for (int n = 1; n <= check_until; ++n) {
    power = scaled * power;
    const double ratio = operator_norm(power) / (g.alpha * std::pow(static_cast<double>(n), g.kappa));
    g.max_violation_ratio = std::max(g.max_violation_ratio, ratio);
  }
  return g;
}

std::vector<GrowthSample> growth_series(const CMatrix& a, const GrowthBound& g, int n_max) {
  std::vector<GrowthSample> rows;
  Mat power = Mat::Identity(a.dim(), a.dim());
  for (int n = 1; n <= n_max; ++n) {
    power = a.mat() * power;
    rows.push_back({n, operator_norm(power), g.bound_at(n)});
  }
  return rows;
}

StabilityVerdict uniform_stability(const CMatrix& a, const AnalysisConfig& cfg) {
  cfg.validate();
  const auto p = minimal_polynomial(a, cfg.tol_rank);
  const auto d = decompose(a, p, cfg.tol_rank);
  const double r = radius_of(p);

  StabilityVerdict v;
  v.uniformly_stable = r < 1.0 - 1e-10;
  v.power_bounded = power_boundedness(a, p).structural;

  Mat power = Mat::Identity(a.dim(), a.dim());
  for (int n = 0; n < 2000; ++n) {
    power = a.mat() * power;
    if (!all_finite(power)) break;
  }
  v.empirical_uniform = all_finite(power) && operator_norm(power) <= 1e-6;

  int horizon = cfg.n_max;
  if (v.uniformly_stable && r > 0.0) {
    // Enough steps for r^n n^kappa to fall far below the convergence tolerance.
    const double steps = 40.0 * static_cast<double>(p.degree()) / -std::log(r);
    horizon = static_cast<int>(std::clamp(steps, static_cast<double>(cfg.n_max), 1e6));
  }

  v.strongly_stable = true;
  for (const auto& [label, h] : probe_set(a.dim(), cfg.random_probes, cfg.seed)) {
    const auto rec = orbit_analyze(a, CVector(h), horizon, cfg, &d);
    const bool converges = rec.classification.kind == OrbitClass::convergent;
    if (converges) {
      v.limit_projection_norm_sq.emplace_back(label, rec.classification.limit * rec.classification.limit);
    }
    if (!converges || rec.classification.limit > cfg.tol_conv * h.norm()) v.strongly_stable = false;
  }
  return v;
}

RootLimit orbit_root_limit(const CMatrix& a, const CVector& h, int n_max) {
  if (h.dim() != a.dim()) throw Error(ErrorKind::invalid_input, "vector and matrix dimensions differ");
  if (!(h.norm() > 0.0)) throw Error(ErrorKind::precondition, "orbit probe must be nonzero");
  if (n_max < 100) throw Error(ErrorKind::precondition, "root limit needs n_max >= 100");

  const auto p = minimal_polynomial(a);
  const auto d = decompose(a, p);
  RootLimit out;
  out.predicted = predict_orbit(a, d, h.vec()).relevant_radius;

  const double scale = std::max(1.0, operator_norm(a));
  const double vanish_floor = 1e-10 * h.norm() * std::pow(scale, p.degree());
  Vec x = h.vec() / h.norm();
  double log_norm = std::log(h.norm());
  std::vector<double> ns;
  std::vector<double> logs;
  for (int n = 1; n <= n_max; ++n) {
    x = a.mat() * x;
    const double s = x.norm();
    if (!(s > 0.0) || (n == p.degree() && std::exp(log_norm) * s <= vanish_floor)) {
      out.vanished = true;
      break;
    }
    log_norm += std::log(s);
    x /= s;
    if (n >= n_max / 2) {
      ns.push_back(n);
      logs.push_back(log_norm);
    }
  }
  out.empirical = out.vanished ? 0.0 : std::exp(regression_slope_with_log(ns, logs));
  out.agrees = std::abs(out.empirical - out.predicted) <= 1e-3;
  return out;
}

double orbit_circle_gap(const CMatrix& a, const CVector& h, int targets, int n_max) {
  if (h.dim() != a.dim()) throw Error(ErrorKind::invalid_input, "vector and matrix dimensions differ");
  if (targets <= 0 || n_max < 0) throw Error(ErrorKind::invalid_input, "targets and horizon must be positive");
  std::vector<Vec> points;
  for (int t = 0; t < targets; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / targets;
    points.push_back(std::polar(1.0, angle) * h.vec());
  }
  std::vector<double> best(static_cast<std::size_t>(targets), std::numeric_limits<double>::infinity());
  Vec x = h.vec();
  for (int n = 0; n <= n_max; ++n) {
    for (int t = 0; t < targets; ++t) {
      auto& slot = best[static_cast<std::size_t>(t)];
      slot = std::min(slot, (x - points[static_cast<std::size_t>(t)]).norm());
    }
    x = a.mat() * x;
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace aolab
