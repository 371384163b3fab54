#pragma once

#include <cstdint>
#include <vector>

#include "aolab/matrix.hpp"

namespace aolab {

struct Root {
  cplx z;
  int index = 1;  // multiplicity of z in the minimal polynomial
};

/// Monic minimal polynomial p(x) = prod_j (x - z_j)^{i_j} with distinct z_j.
struct MinimalPoly {
  std::vector<Root> roots;

  int degree() const;
  // Evaluates p(A) as a product of shifted powers.
  Mat evaluate(const Mat& a) const;
  // Monic coefficients, constant term first.
  std::vector<cplx> coefficients() const;
};

/// Roots are the clustered eigenvalues; each index is the first power at
/// which dim N((A - zI)^k) stops growing.
MinimalPoly minimal_polynomial(const CMatrix& a, double rank_rel = kDefaultRankRel);

struct SpectralBlock {
  cplx z;
  int index = 1;
  Mat basis;       // dim x d_j, orthonormal columns spanning N((A - zI)^index)
  Mat projection;  // oblique projection onto this block along the others

  int dim() const noexcept { return static_cast<int>(basis.cols()); }
};

/// Generalized eigenspace decomposition H = H_1 + ... + H_m with the
/// projections P_j = B E_j B^{-1} and c = max_j ||P_j||, which bounds
/// ||h_j|| <= c ||h_1 + ... + h_m||.
struct Decomposition {
  std::vector<SpectralBlock> blocks;
  double constant_c = 1.0;
};

Decomposition decompose(const CMatrix& a, const MinimalPoly& p, double rank_rel = kDefaultRankRel);

// basis* A basis: the matrix of A restricted to an invariant subspace with
// an orthonormal basis.
Mat compression(const Mat& a, const Mat& basis);

std::vector<SpectrumInfo> restriction_spectra(const CMatrix& a, const Decomposition& d);

/// Residual-level certification of the structural conditions of a
/// decomposition. Each flag is a pass/fail at `tol` (scaled by ||A||).
struct DecompositionCertificate {
  bool direct_sum = false;         // sum d_j = dim and the concatenated basis is invertible
  bool invariant = false;          // A(H_j) in H_j
  bool nilpotent_shift = false;    // (A_j - z_j)^{i_j} = 0 on H_j
  bool singleton_spectra = false;  // sigma(A_j) = {z_j} and sigma(A) = {z_1..z_m}
  bool projections = false;        // idempotent, mutually annihilating, sum to I, correct range
  bool bounded_constant = false;   // 0 < c < inf
  double invariance_residual = 0.0;
  double nilpotent_residual = 0.0;
  double projection_residual = 0.0;

  bool all() const {
    return direct_sum && invariant && nilpotent_shift && singleton_spectra && projections &&
           bounded_constant;
  }
};

DecompositionCertificate certify(const CMatrix& a, const Decomposition& d, double tol = 1e-8);

/// Samples random tuples h_j in H_j and returns the worst observed
/// max_j ||h_j|| / (c * ||sum_k h_k||). Values <= 1 confirm the constant.
double sampled_projection_ratio(const Decomposition& d, int samples, std::uint64_t seed);

}  // namespace aolab
