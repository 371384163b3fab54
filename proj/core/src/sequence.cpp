#include "aolab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "aolab/error.hpp"

namespace aolab {

void AnalysisConfig::validate() const {
  if (n_max <= 0) throw Error(ErrorKind::invalid_input, "n_max must be positive");
  if (window <= 0 || window >= n_max) {
    throw Error(ErrorKind::invalid_input, "window must satisfy 0 < window < n_max");
  }
  if (!(tol_conv > 0.0)) throw Error(ErrorKind::invalid_input, "tol_conv must be > 0");
  if (!(tol_rank > 0.0)) throw Error(ErrorKind::invalid_input, "tol_rank must be > 0");
  if (random_probes < 0) throw Error(ErrorKind::invalid_input, "random_probes must be >= 0");
}

WindowVerdict window_rule(std::span<const double> s, int window, double tol) {
  if (window <= 0 || static_cast<std::size_t>(window) > s.size()) {
    throw Error(ErrorKind::invalid_input,
                "window rule needs at least " + std::to_string(window) + " terms");
  }
  const auto tail = s.last(static_cast<std::size_t>(window));
  double sum = 0.0;
  for (double x : tail) sum += x;
  WindowVerdict v;
  v.limit = sum / static_cast<double>(window);
  for (double x : tail) v.max_deviation = std::max(v.max_deviation, std::abs(x - v.limit));
  v.convergent = std::isfinite(v.limit) && v.max_deviation <= std::max(tol, tol * std::abs(v.limit));
  return v;
}

std::vector<double> leader_clusters(std::span<const double> values, double radius) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> means;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double leader = sorted[i];
    double sum = 0.0;
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] - leader <= radius) sum += sorted[j++];
    means.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return means;
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

double regression_slope_with_log(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  // Centre and scale columns so the normal equations stay well conditioned.
  const double x0 = x.front();
  const double span = std::max(1.0, x.back() - x.front());
  const double l0 = std::log(x.front());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = (xi - x0) / span;
    design(i, 2) = std::log(xi) - l0;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  return coef(1) / span;
}

}  // namespace aolab
