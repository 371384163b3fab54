#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aolab/algebraic.hpp"
#include "aolab/matrix.hpp"
#include "aolab/sequence.hpp"

namespace aolab {

enum class OrbitClass {
  convergent,
  bounded_nonconvergent,
  polynomial_growth,
  exponential_growth,
};

std::string_view to_string(OrbitClass c);

struct OrbitClassification {
  OrbitClass kind = OrbitClass::convergent;
  double limit = 0.0;  // convergent
  int degree = 0;      // polynomial_growth
  double rate = 0.0;   // exponential_growth

  static OrbitClassification convergent_to(double limit);
  static OrbitClassification bounded();
  static OrbitClassification polynomial(int degree);
  static OrbitClassification exponential(double rate);

  // Same kind and same discrete parameter (degree); limits and rates are
  // not compared.
  bool same_shape(const OrbitClassification& other) const;
};

/// Finite-horizon classification ladder for a norm sequence s_0..s_N:
///  1. exponential if log(s_n / n^D) rises with slope > 1e-3 over the tail
///     half, D being the largest admissible polynomial degree;
///  2. polynomial(d) for the smallest 1 <= d <= D such that s_n / n^d varies
///     by at most 5% (relative) over the tail half;
///  3. convergent by the window rule;
///  4. bounded-nonconvergent unless the tail maximum exceeds 1.1 times the
///     head maximum, in which case exponential with the fitted rate.
OrbitClassification classify_orbit(std::span<const double> norms, int max_poly_degree,
                                   const AnalysisConfig& cfg);

struct OrbitRecord {
  CVector h;
  std::vector<double> norms;  // norms[n] = ||A^n h||, n = 0..n_max (shorter on overflow)
  std::optional<int> structural_exponent;
  OrbitClassification classification;
};

/// Iterates h -> A h (A is never powered). When `structure` is null the
/// decomposition is computed on the fly; if that fails the structural
/// exponent is left empty.
OrbitRecord orbit_analyze(const CMatrix& a, const CVector& h, int n_max,
                          const AnalysisConfig& cfg = {},
                          const Decomposition* structure = nullptr);

/// Largest k with (A - z_j)^k P_j h != 0 over the blocks of maximal modulus
/// among those with P_j h != 0.
int structural_exponent(const CMatrix& a, const Decomposition& d, const Vec& h);

/// What the block data (z_j, N(h), Gram coefficients) says the orbit of h
/// must do asymptotically.
struct OrbitPrediction {
  OrbitClassification expected;
  double relevant_radius = 0.0;  // max{|z_j| : P_j h != 0}
  int exponent = 0;
};

OrbitPrediction predict_orbit(const CMatrix& a, const Decomposition& d, const Vec& h);

// ||A*A - I||_F <= 1e-10 dim and ||AA* - I||_F <= 1e-10 dim.
bool is_unitary(const CMatrix& a);

struct NormaloidCheck {
  bool normaloid = false;       // |r - ||A||| <= 1e-8 max(1, ||A||)
  bool powers_agree = true;     // ||A^n|| = ||A||^n for n = 2..10 matches the verdict
  double spectral_radius = 0.0;
  double norm = 0.0;
};

NormaloidCheck normaloid_check(const CMatrix& a);
bool is_normaloid(const CMatrix& a);

struct PowerBoundedness {
  bool structural = false;  // r <= 1 + 1e-10 and index 1 on every root with |z| >= 1 - 1e-8
  bool empirical_growth = false;
  bool empirical_flat = false;
  double max_power_norm = 0.0;  // max_{n <= 1000} ||A^n||
  bool agree = true;
};

PowerBoundedness power_boundedness(const CMatrix& a, const MinimalPoly& p);

/// Structural answer; throws inconsistency when max_{n<=1000} ||A^n||
/// contradicts it (decisive growth for a bounded verdict, or no growth at
/// all for an unbounded one).
bool is_power_bounded(const CMatrix& a);

struct ProbeResult {
  std::string label;
  OrbitRecord record;
  std::optional<double> gram;  // |<h_k, h_l>| for block-mixing probes
};

struct CriteriaReport {
  bool is_algebraic = true;
  int minpoly_degree = 0;
  bool spectrum_in_circle = false;
  bool unitary = false;
  bool normaloid = false;
  bool contraction = false;
  bool orbits_convergent = false;
  bool power_bounded = false;
  std::optional<CVector> witness;
  bool consistent = true;
  std::string orbit_certification = "certified via probes";
  std::vector<ProbeResult> probes;
  std::vector<std::string> warnings;

  bool hypotheses_hold() const { return is_algebraic && spectrum_in_circle; }
};

/// Decides the four equivalent conditions (unitary, normaloid, ||A|| <= 1,
/// all orbits convergent) plus power boundedness. The orbit condition is probed
/// on basis vectors, seeded random unit vectors and, for every pair of
/// blocks, h_k + h_l and i h_k + h_l with (h_k, h_l) the maximally
/// correlated unit pair. Never throws on inconsistency; it is recorded.
CriteriaReport theorem_check(const CMatrix& a, const AnalysisConfig& cfg = {});

struct ScalarSeqVerdict {
  cplx w;
  cplx b;
  bool convergent = false;
  double limit = 0.0;
  std::vector<double> cluster_points;  // tail half, merge radius 1e-6
  bool zero_amplitude_consistent = true;        // convergent implies b == 0
};

/// Re(w^n b), n = 0..n_max by iterated multiplication. Requires |w| = 1 and
/// w != +-1 (both to 1e-12).
ScalarSeqVerdict scalar_re_sequence(cplx w, cplx b, int n_max, const AnalysisConfig& cfg = {});

std::vector<double> scalar_re_values(cplx w, cplx b, int n_max);

}  // namespace aolab
