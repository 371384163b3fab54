#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aolab/criteria.hpp"
#include "aolab/matrix.hpp"
#include "aolab/sequence.hpp"

namespace aolab {

struct NormaloidEquivalence {
  bool orbits_convergent = false;
  bool power_bounded = false;
  bool contraction = false;

  bool all_agree() const {
    return orbits_convergent == power_bounded && power_bounded == contraction;
  }
};

/// For a normaloid A: every probe orbit converges, A is power bounded and
/// ||A|| <= 1 hold or fail together. Throws precondition when A is not
/// normaloid and inconsistency when the three answers differ.
NormaloidEquivalence normaloid_equivalence(const CMatrix& a, const AnalysisConfig& cfg = {});

struct NormalLimit {
  double limit = 0.0;      // <Qh, h>, Q = projection onto unimodular eigenvectors
  double empirical = 0.0;  // ||A^n h||^2 at n = iterations
  bool agrees = false;     // |limit - empirical| <= 1e-6 max(1, ||h||^2)
};

/// lim ||A^n h||^2 for a normal contraction. Throws precondition when A is
/// not normal or not a contraction.
NormalLimit normal_limit(const CMatrix& a, const CVector& h, int iterations = 2000);

/// Orthogonal projection onto the span of eigenvectors with |lambda| >= 1 - 1e-8
/// of a normal matrix.
Mat unimodular_projection(const CMatrix& a);

/// ||A^n|| <= alpha n^kappa r^n for n >= valid_from, with
/// kappa = deg p - 1 and alpha = sum_j ||P_j|| alpha_j, where
/// alpha_j = sum_{k < i_j} ||N_j^k|| / (k! |z_j|^k) on each block. When r = 0
/// the bound collapses to ||A^n|| = 0 from n = deg p on; max_violation_ratio
/// then measures ||A^n|| against the rounding floor 1e-10 max(1,||A||)^deg p.
struct GrowthBound {
  int kappa = 0;
  double alpha = 1.0;
  double spectral_radius = 0.0;
  int valid_from = 1;
  double max_violation_ratio = 0.0;
  int checked_until = 0;

  bool holds() const { return max_violation_ratio <= 1.0 + 1e-8; }
  double bound_at(int n) const;
};

/// Throws out_of_scope when r(A) > 1.
GrowthBound growth_bound(const CMatrix& a, int check_until = 1000,
                         double rank_rel = kDefaultRankRel);

struct GrowthSample {
  int n = 0;
  double power_norm = 0.0;
  double bound = 0.0;
};

std::vector<GrowthSample> growth_series(const CMatrix& a, const GrowthBound& g, int n_max);

struct StabilityVerdict {
  bool uniformly_stable = false;   // r(A) < 1 - 1e-10
  bool strongly_stable = false;    // every probe orbit tends to 0
  bool power_bounded = false;
  bool empirical_uniform = false;  // ||A^2000|| <= 1e-6
  std::vector<std::pair<std::string, double>> limit_projection_norm_sq;  // probe -> lim ||A^n h||^2
};

/// Probe horizons are stretched when r(A) < 1 so that slowly decaying orbits
/// still reach the convergence window.
StabilityVerdict uniform_stability(const CMatrix& a, const AnalysisConfig& cfg = {});

struct RootLimit {
  double empirical = 0.0;  // exp of the fitted log-slope of ||A^n h||
  double predicted = 0.0;  // max{|z_j| : P_j h != 0}
  bool agrees = false;     // within 1e-3
  bool vanished = false;   // orbit hit zero (nilpotent component only)
};

/// Limit of ||A^n h||^{1/n}. The estimate fits log ||A^n h|| = a + b n + c log n
/// over the tail half and reports exp(b), which removes the polynomial factor
/// that makes the plain n-th root converge like 1 + O(log n / n).
RootLimit orbit_root_limit(const CMatrix& a, const CVector& h, int n_max);

/// max over `targets` equispaced unit-circle points z of min_{n <= n_max}
/// ||A^n h - z h||.
double orbit_circle_gap(const CMatrix& a, const CVector& h, int targets, int n_max);

}  // namespace aolab
