#include "aolab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "aolab/error.hpp"

namespace aolab {
namespace {

void require_finite(const Mat& m, const char* what) {
  if (!all_finite(m)) {
    throw Error(ErrorKind::invalid_input, std::string(what) + " has non-finite entries");
  }
}

// Re first, Im as tie-break when the real parts agree to within eps.
bool canonical_less(cplx a, cplx b, double eps) {
  if (std::abs(a.real() - b.real()) > eps) return a.real() < b.real();
  return a.imag() < b.imag();
}

cplx mean_of(const std::vector<cplx>& values, const std::vector<int>& idx) {
  cplx sum{0.0, 0.0};
  for (int i : idx) sum += values[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(idx.size());
}

}  // namespace

CMatrix::CMatrix(Mat m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(ErrorKind::invalid_input,
                "matrix must be square and nonempty, got " + std::to_string(m_.rows()) + "x" +
                    std::to_string(m_.cols()));
  }
  if (m_.rows() > kMaxDim) {
    throw Error(ErrorKind::size_limit, "dimension " + std::to_string(m_.rows()) +
                                           " exceeds the supported maximum of " +
                                           std::to_string(kMaxDim));
  }
  require_finite(m_, "matrix");
}

CMatrix CMatrix::identity(int dim) { return CMatrix(Mat::Identity(dim, dim)); }

CMatrix CMatrix::zero(int dim) { return CMatrix(Mat::Zero(dim, dim)); }

CMatrix CMatrix::diagonal(std::span<const cplx> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return CMatrix(std::move(m));
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Mat m(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::invalid_input, "from_rows: ragged rows");
    }
    Eigen::Index c = 0;
    for (const cplx& x : row) m(r, c++) = x;
    ++r;
  }
  return CMatrix(std::move(m));
}

CVector::CVector(Vec v) : v_(std::move(v)) {
  if (v_.size() == 0) throw Error(ErrorKind::invalid_input, "vector must be nonempty");
  if (v_.size() > kMaxDim) {
    throw Error(ErrorKind::size_limit, "vector dimension exceeds " + std::to_string(kMaxDim));
  }
  require_finite(v_, "vector");
}

CVector CVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw Error(ErrorKind::invalid_input, "basis index out of range");
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return CVector(std::move(v));
}

CVector CVector::from_list(std::initializer_list<cplx> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const cplx& x : entries) v(i++) = x;
  return CVector(std::move(v));
}

bool all_finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

cplx inner(const Vec& x, const Vec& y) {
  // Eigen's dot() conjugates the first argument.
  return y.dot(x);
}

std::vector<double> singular_values(const Mat& m) {
  require_finite(m, "matrix");
  if (m.size() == 0) return {};
  Eigen::BDCSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double operator_norm(const Mat& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

double operator_norm(const CMatrix& a) { return operator_norm(a.mat()); }

double default_rank_threshold(const Mat& m, double rel) {
  const auto dim = static_cast<double>(std::max(m.rows(), m.cols()));
  return rel * dim * operator_norm(m);
}

int rank(const Mat& m, double tol) {
  if (tol < 0.0) throw Error(ErrorKind::invalid_input, "rank tolerance must be >= 0");
  const auto s = singular_values(m);
  if (s.empty()) return 0;
  const double threshold =
      tol > 0.0 ? tol
                : kDefaultRankRel * static_cast<double>(std::max(m.rows(), m.cols())) * s.front();
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > threshold; }));
}

int rank(const CMatrix& a, double tol) { return rank(a.mat(), tol); }

Mat null_space(const Mat& m, double tol) {
  require_finite(m, "matrix");
  if (tol < 0.0) throw Error(ErrorKind::invalid_input, "null-space tolerance must be >= 0");
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double threshold =
      tol > 0.0 ? tol
                : kDefaultRankRel * static_cast<double>(std::max(m.rows(), m.cols())) * smax;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

std::vector<cplx> raw_eigenvalues(const Mat& a) {
  require_finite(a, "matrix");
  const auto n = a.rows();
  Eigen::ComplexSchur<Mat> schur(n);
  schur.setMaxIterations(100 * n);
  schur.compute(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure,
                "shifted QR did not converge within " + std::to_string(100 * n) + " iterations");
  }
  const Mat& t = schur.matrixT();
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t(i, i);
  return out;
}

std::vector<int> KernelChain::dimensions() const {
  std::vector<int> dims;
  dims.reserve(bases.size());
  for (const auto& b : bases) dims.push_back(static_cast<int>(b.cols()));
  return dims;
}

KernelChain kernel_chain(const Mat& a, cplx z, int max_power, double rank_rel) {
  const auto n = a.rows();
  Mat shifted = a;
  shifted.diagonal().array() -= z;
  // Scaled by ||A|| as well: when A is within rounding of zI, ||A - zI|| alone
  // would put the whole rounding residue above the cutoff.
  const double scale = std::max(operator_norm(shifted), operator_norm(a));
  const double threshold = rank_rel * static_cast<double>(n) * scale;

  KernelChain chain;
  Mat q(n, 0);
  for (int k = 1; k <= max_power; ++k) {
    Mat step = shifted;
    if (q.cols() > 0) step -= q * (q.adjoint() * shifted);
    Mat next = null_space(step, threshold > 0.0 ? threshold : 0.0);
    if (threshold == 0.0) {
      // A - zI vanishes identically: every vector is in the kernel.
      next = Mat::Identity(n, n);
    }
    if (next.cols() <= q.cols()) break;
    q = std::move(next);
    chain.bases.push_back(q);
    if (q.cols() == n) break;
  }
  return chain;
}

double cluster_radius(const Mat& a) { return kClusterRel * std::max(1.0, operator_norm(a)); }

std::vector<EigenCluster> cluster_eigenvalues(const Mat& a, std::span<const cplx> eigenvalues,
                                              double rank_rel) {
  const std::vector<cplx> values(eigenvalues.begin(), eigenvalues.end());
  const int count = static_cast<int>(values.size());
  const double norm = operator_norm(a);
  const double delta = kClusterRel * std::max(1.0, norm);
  const double search = 0.1 * std::max(1.0, norm);
  const int dim = static_cast<int>(a.rows());

  // Single linkage at delta.
  std::vector<int> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (std::abs(values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(j)]) <=
          delta) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  {
    std::vector<int> slot(static_cast<std::size_t>(count), -1);
    for (int i = 0; i < count; ++i) {
      const int root = find(i);
      if (slot[static_cast<std::size_t>(root)] < 0) {
        slot[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
    }
  }
  std::sort(groups.begin(), groups.end(), [&](const auto& g, const auto& h) {
    return canonical_less(mean_of(values, g), mean_of(values, h), delta);
  });

  // Multiplicity-driven merging of neighbouring groups.
  std::vector<std::vector<int>> merged;
  std::vector<bool> used(groups.size(), false);
  for (std::size_t s = 0; s < groups.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    const cplx seed_center = mean_of(values, groups[s]);
    std::vector<std::size_t> candidates;
    for (std::size_t t = 0; t < groups.size(); ++t) {
      if (!used[t] && std::abs(mean_of(values, groups[t]) - seed_center) <= search) {
        candidates.push_back(t);
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(mean_of(values, groups[x]) - seed_center) <
             std::abs(mean_of(values, groups[y]) - seed_center);
    });

    std::vector<int> current = groups[s];
    std::vector<int> best = current;
    std::vector<std::size_t> absorbed;
    std::size_t best_absorbed = 0;
    for (std::size_t t : candidates) {
      current.insert(current.end(), groups[t].begin(), groups[t].end());
      absorbed.push_back(t);
      const cplx center = mean_of(values, current);
      const int gdim = kernel_chain(a, center, dim, rank_rel).dimension();
      if (gdim == 0) break;
      if (gdim >= static_cast<int>(current.size())) {
        best = current;
        best_absorbed = absorbed.size();
      }
    }
    for (std::size_t k = 0; k < best_absorbed; ++k) used[absorbed[k]] = true;
    merged.push_back(std::move(best));
  }

  std::vector<EigenCluster> clusters;
  clusters.reserve(merged.size());
  for (const auto& g : merged) {
    clusters.push_back({mean_of(values, g), static_cast<int>(g.size())});
  }
  std::sort(clusters.begin(), clusters.end(), [&](const EigenCluster& x, const EigenCluster& y) {
    return canonical_less(x.center, y.center, delta);
  });

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      if (std::abs(clusters[i].center - clusters[j].center) <= 2.0 * delta) {
        std::vector<cplx> fine;
        std::vector<cplx> coarse;
        for (std::size_t k = 0; k < clusters.size(); ++k) {
          fine.push_back(clusters[k].center);
          if (k != j) {
            coarse.push_back(k == i ? 0.5 * (clusters[i].center + clusters[j].center)
                                    : clusters[k].center);
          }
        }
        throw IllConditionedSpectrum("eigenvalue clusters closer than twice the merge radius",
                                     std::move(fine), std::move(coarse));
      }
    }
  }
  return clusters;
}

SpectrumInfo spectrum(const Mat& a, double rank_rel) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::invalid_input, "spectrum requires a nonempty square matrix");
  }
  const auto raw = raw_eigenvalues(a);
  const auto clusters = cluster_eigenvalues(a, raw, rank_rel);
  SpectrumInfo info;
  for (const auto& c : clusters) {
    info.eigenvalues.push_back({c.center, c.multiplicity});
    info.spectral_radius = std::max(info.spectral_radius, std::abs(c.center));
  }
  return info;
}

SpectrumInfo spectrum(const CMatrix& a, double rank_rel) { return spectrum(a.mat(), rank_rel); }

bool is_normal(const Mat& a, double rel_tol) {
  const double n = operator_norm(a);
  const Mat comm = a.adjoint() * a - a * a.adjoint();
  return comm.norm() <= rel_tol * std::max(n * n, 1e-300);
}

}  // namespace aolab
