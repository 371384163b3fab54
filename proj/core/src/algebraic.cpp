#include "aolab/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>

#include "aolab/error.hpp"

namespace aolab {
namespace {

std::string format_z(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

int MinimalPoly::degree() const {
  int d = 0;
  for (const auto& r : roots) d += r.index;
  return d;
}

Mat MinimalPoly::evaluate(const Mat& a) const {
  const auto n = a.rows();
  Mat out = Mat::Identity(n, n);
  for (const auto& r : roots) {
    Mat shifted = a;
    shifted.diagonal().array() -= r.z;
    for (int k = 0; k < r.index; ++k) out = shifted * out;
  }
  return out;
}

std::vector<cplx> MinimalPoly::coefficients() const {
  std::vector<cplx> c{cplx{1.0, 0.0}};
  for (const auto& r : roots) {
    for (int k = 0; k < r.index; ++k) {
      std::vector<cplx> next(c.size() + 1, cplx{0.0, 0.0});
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r.z * c[i];
      }
      c = std::move(next);
    }
  }
  return c;
}

MinimalPoly minimal_polynomial(const CMatrix& a, double rank_rel) {
  const auto raw = raw_eigenvalues(a.mat());
  const auto clusters = cluster_eigenvalues(a.mat(), raw, rank_rel);
  MinimalPoly p;
  for (const auto& c : clusters) {
    const auto chain = kernel_chain(a.mat(), c.center, a.dim(), rank_rel);
    if (chain.index() == 0) {
      throw Error(ErrorKind::numerical_failure,
                  "eigenvalue cluster " + format_z(c.center) + " has an empty numerical kernel");
    }
    p.roots.push_back({c.center, chain.index()});
  }
  return p;
}

Mat compression(const Mat& a, const Mat& basis) { return basis.adjoint() * a * basis; }

Decomposition decompose(const CMatrix& a, const MinimalPoly& p, double rank_rel) {
  const int n = a.dim();
  Decomposition d;
  int total = 0;
  for (const auto& r : p.roots) {
    const auto chain = kernel_chain(a.mat(), r.z, r.index, rank_rel);
    if (chain.index() < r.index) {
      throw Error(ErrorKind::decomposition_failure,
                  "kernel chain at " + format_z(r.z) + " saturates at power " +
                      std::to_string(chain.index()) + " < index " + std::to_string(r.index));
    }
    SpectralBlock block;
    block.z = r.z;
    block.index = r.index;
    block.basis = chain.bases.back();
    total += block.dim();
    d.blocks.push_back(std::move(block));
  }
  if (total != n) {
    throw Error(ErrorKind::decomposition_failure,
                "generalized eigenspace dimensions sum to " + std::to_string(total) +
                    ", expected " + std::to_string(n));
  }

  Mat b(n, n);
  {
    Eigen::Index col = 0;
    for (const auto& block : d.blocks) {
      b.middleCols(col, block.dim()) = block.basis;
      col += block.dim();
    }
  }
  Eigen::FullPivLU<Mat> lu(b);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::decomposition_failure, "generalized eigenspaces are not independent");
  }
  const Mat b_inv = lu.inverse();

  Eigen::Index col = 0;
  d.constant_c = 0.0;
  for (auto& block : d.blocks) {
    block.projection = block.basis * b_inv.middleRows(col, block.dim());
    col += block.dim();
    d.constant_c = std::max(d.constant_c, operator_norm(block.projection));
  }
  return d;
}

std::vector<SpectrumInfo> restriction_spectra(const CMatrix& a, const Decomposition& d) {
  std::vector<SpectrumInfo> out;
  out.reserve(d.blocks.size());
  for (const auto& block : d.blocks) out.push_back(spectrum(compression(a.mat(), block.basis)));
  return out;
}

DecompositionCertificate certify(const CMatrix& a, const Decomposition& d, double tol) {
  DecompositionCertificate cert;
  const int n = a.dim();
  const double scale = std::max(1.0, operator_norm(a));
  const double delta = cluster_radius(a.mat());

  int total = 0;
  for (const auto& block : d.blocks) total += block.dim();
  if (total == n && !d.blocks.empty()) {
    Mat b(n, n);
    Eigen::Index col = 0;
    for (const auto& block : d.blocks) {
      b.middleCols(col, block.dim()) = block.basis;
      col += block.dim();
    }
    cert.direct_sum = rank(b) == n;
  }

  bool singletons = true;
  for (const auto& block : d.blocks) {
    const Mat restricted = compression(a.mat(), block.basis);
    cert.invariance_residual = std::max(
        cert.invariance_residual, (a.mat() * block.basis - block.basis * restricted).norm());

    Mat shifted = restricted;
    shifted.diagonal().array() -= block.z;
    Mat power = Mat::Identity(block.dim(), block.dim());
    for (int k = 0; k < block.index; ++k) power = shifted * power;
    cert.nilpotent_residual = std::max(cert.nilpotent_residual,
                                       power.norm() / std::pow(scale, block.index));

    const auto spec = spectrum(restricted);
    singletons = singletons && spec.eigenvalues.size() == 1 &&
                 std::abs(spec.eigenvalues.front().value - block.z) <= delta;
  }
  const auto full = spectrum(a);
  singletons = singletons && full.eigenvalues.size() == d.blocks.size();
  for (const auto& ev : full.eigenvalues) {
    singletons = singletons && std::any_of(d.blocks.begin(), d.blocks.end(), [&](const auto& b) {
                   return std::abs(b.z - ev.value) <= delta;
                 });
  }
  cert.singleton_spectra = singletons;
  cert.invariant = cert.invariance_residual <= tol * scale;
  cert.nilpotent_shift = cert.nilpotent_residual <= tol;

  Mat sum = Mat::Zero(n, n);
  double resid = 0.0;
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const Mat& pj = d.blocks[j].projection;
    sum += pj;
    resid = std::max(resid, (pj * pj - pj).norm());
    resid = std::max(resid, (pj * d.blocks[j].basis - d.blocks[j].basis).norm());
    for (std::size_t k = 0; k < d.blocks.size(); ++k) {
      if (k != j) resid = std::max(resid, (pj * d.blocks[k].projection).norm());
    }
  }
  resid = std::max(resid, (sum - Mat::Identity(n, n)).norm());
  cert.projection_residual = resid / std::max(1.0, d.constant_c);
  cert.projections = cert.projection_residual <= tol;
  cert.bounded_constant = std::isfinite(d.constant_c) && d.constant_c > 0.0;
  return cert;
}

double sampled_projection_ratio(const Decomposition& d, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Vec> parts;
    Vec total = Vec::Zero(d.blocks.front().basis.rows());
    for (const auto& block : d.blocks) {
      Vec coords(block.dim());
      for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) = cplx(gauss(rng), gauss(rng));
      // Spread magnitudes over several decades to probe near-cancellation.
      coords *= std::pow(10.0, gauss(rng));
      parts.push_back(block.basis * coords);
      total += parts.back();
    }
    const double denom = d.constant_c * total.norm();
    for (const auto& h : parts) {
      if (denom > 0.0) worst = std::max(worst, h.norm() / denom);
    }
  }
  return worst;
}

}  // namespace aolab
