#pragma once

// Reference computations that do not go through the library's own SVD,
// Schur or clustering code.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "aolab/matrix.hpp"

namespace aolab::testing {

inline const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

inline Mat gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  }
  return m;
}

inline Vec gaussian_vec(int dim, std::mt19937_64& rng) { return gaussian(dim, 1, rng).col(0); }

// Gram-Schmidt on a Gaussian matrix; independent of the library's Haar sampler.
inline Mat gram_schmidt_unitary(int dim, std::mt19937_64& rng) {
  Mat q = gaussian(dim, dim, rng);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

// sqrt of the top eigenvalue of A*A by power iteration; stops when the
// Rayleigh quotient settles to 1e-14 relative.
inline double power_iteration_norm(const Mat& a) {
  const Mat g = a.adjoint() * a;
  Vec x = Vec::Ones(a.cols());
  for (int i = 0; i < a.cols(); ++i) x(i) += cplx(0.01 * i, 0.003 * i * i);
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    const Vec y = g * x;
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    const double next = x.dot(y).real() / x.squaredNorm();
    x = y / ny;
    if (std::abs(next - lambda) <= 1e-14 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

// ||[[1,n],[0,1]]|| in closed form: (n + sqrt(n^2 + 4)) / 2.
inline double jordan_power_norm(int n) { return (n + std::sqrt(static_cast<double>(n) * n + 4.0)) / 2.0; }

inline Mat matrix_power(const Mat& a, int k) {
  Mat out = Mat::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = a * out;
  return out;
}

}  // namespace aolab::testing
