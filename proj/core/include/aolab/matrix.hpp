#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace aolab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Desk scale: everything above this dimension is rejected with size_limit.
inline constexpr int kMaxDim = 64;

// Relative factor in the default rank threshold rel * dim * sigma_max.
inline constexpr double kDefaultRankRel = 1e-10;

// Eigenvalues closer than kClusterRel * max(1, ||A||) are the same root.
inline constexpr double kClusterRel = 1e-8;

/// Dense square complex matrix with finite entries and 1 <= dim <= kMaxDim.
/// Construction validates; the wrapped Eigen matrix is immutable afterwards.
class CMatrix {
 public:
  explicit CMatrix(Mat m);

  static CMatrix identity(int dim);
  static CMatrix zero(int dim);
  static CMatrix diagonal(std::span<const cplx> entries);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Mat& mat() const noexcept { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  friend bool operator==(const CMatrix& a, const CMatrix& b) { return a.m_ == b.m_; }

 private:
  Mat m_;
};

/// Nonempty complex vector with finite entries.
class CVector {
 public:
  explicit CVector(Vec v);

  static CVector basis(int dim, int index);
  static CVector from_list(std::initializer_list<cplx> entries);

  int dim() const noexcept { return static_cast<int>(v_.size()); }
  const Vec& vec() const noexcept { return v_; }
  cplx operator[](int i) const { return v_(i); }
  double norm() const { return v_.norm(); }

  friend bool operator==(const CVector& a, const CVector& b) { return a.v_ == b.v_; }

 private:
  Vec v_;
};

struct Eigenvalue {
  cplx value;
  int multiplicity = 1;
};

struct SpectrumInfo {
  std::vector<Eigenvalue> eigenvalues;  // clustered; multiplicities sum to dim
  double spectral_radius = 0.0;
};

bool all_finite(const Mat& m);

// <x, y> = sum_i x_i * conj(y_i), linear in the first slot.
cplx inner(const Vec& x, const Vec& y);

std::vector<double> singular_values(const Mat& m);

/// Largest singular value. Works for any shape; throws invalid_input on
/// non-finite entries.
double operator_norm(const Mat& m);
double operator_norm(const CMatrix& a);

double default_rank_threshold(const Mat& m, double rel = kDefaultRankRel);

/// Number of singular values strictly above tol; tol == 0 selects the
/// default threshold.
int rank(const Mat& m, double tol = 0.0);
int rank(const CMatrix& a, double tol = 0.0);

/// Orthonormal basis (columns) of the numerical kernel: right singular
/// vectors whose singular value is <= tol (default threshold when tol == 0).
Mat null_space(const Mat& m, double tol = 0.0);

/// Unclustered eigenvalues from the complex Schur form (Hessenberg reduction
/// followed by shifted QR). Throws numerical_failure when QR has not
/// converged after 100 * dim iterations.
std::vector<cplx> raw_eigenvalues(const Mat& a);

/// Nested kernels N((A - zI)^k), k = 1, 2, ... up to saturation or
/// max_power. Step k solves (I - Q Q*)(A - zI) x = 0 with Q spanning the
/// previous kernel, so no matrix power is ever formed. All steps share one
/// threshold rel * dim * max(||A - zI||, ||A||).
struct KernelChain {
  std::vector<Mat> bases;  // bases[k-1]: orthonormal basis of N((A - zI)^k)

  // Smallest k >= 1 with N((A-zI)^k) = N((A-zI)^{k+1}); 0 if z is not an
  // eigenvalue.
  int index() const noexcept { return static_cast<int>(bases.size()); }
  int dimension() const noexcept {
    return bases.empty() ? 0 : static_cast<int>(bases.back().cols());
  }
  std::vector<int> dimensions() const;
};

KernelChain kernel_chain(const Mat& a, cplx z, int max_power, double rank_rel = kDefaultRankRel);

struct EigenCluster {
  cplx center;
  int multiplicity = 1;
};

double cluster_radius(const Mat& a);

/// Groups raw eigenvalues into distinct roots. Eigenvalues within
/// cluster_radius merge first; neighbouring groups are then absorbed while
/// the generalized eigenspace at the merged mean is at least as large as the
/// merged multiplicity (this recovers roots that QR splits apart when they
/// sit in a Jordan block). Centers are cluster means. Throws
/// IllConditionedSpectrum when two final centers are within twice the radius.
std::vector<EigenCluster> cluster_eigenvalues(const Mat& a, std::span<const cplx> eigenvalues,
                                              double rank_rel = kDefaultRankRel);

SpectrumInfo spectrum(const Mat& a, double rank_rel = kDefaultRankRel);
SpectrumInfo spectrum(const CMatrix& a, double rank_rel = kDefaultRankRel);

bool is_normal(const Mat& a, double rel_tol = 1e-10);

}  // namespace aolab
