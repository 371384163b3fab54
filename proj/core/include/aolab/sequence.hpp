#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aolab {

/// Knobs shared by every finite-horizon decision in the library.
struct AnalysisConfig {
  int n_max = 2000;         // orbit horizon
  int window = 50;          // trailing window for the convergence rule
  double tol_conv = 1e-6;   // window-rule tolerance
  double tol_rank = 1e-10;  // relative rank threshold factor
  std::uint64_t seed = 0;   // random probe seed
  int random_probes = 20;

  // Throws invalid_input unless 0 < window < n_max and tolerances > 0.
  void validate() const;
};

/// Convergence window rule: over the trailing `window` terms with mean L,
/// the sequence is convergent iff max |s_n - L| <= max(tol, tol * |L|).
struct WindowVerdict {
  bool convergent = false;
  double limit = 0.0;          // window mean
  double max_deviation = 0.0;  // max |s_n - L| over the window
};

WindowVerdict window_rule(std::span<const double> s, int window, double tol);

/// Leader clustering on the line: sorted values join the current cluster
/// while within `radius` of its first member. Returns cluster means in
/// increasing order.
std::vector<double> leader_clusters(std::span<const double> values, double radius);

/// Least-squares slope of y against x.
double regression_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares fit y = a + b * x + c * log(x); returns b. Used to strip a
/// polynomial factor n^c from log-norm sequences.
double regression_slope_with_log(std::span<const double> x, std::span<const double> y);

}  // namespace aolab
