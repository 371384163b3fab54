#include "aolab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/QR>

#include "aolab/error.hpp"

namespace aolab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rng = std::mt19937_64;

Mat gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss;
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(gauss(rng), gauss(rng));
  }
  return m;
}

Mat haar(int dim, Rng& rng) {
  const Mat g = gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(dim, dim);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const double mod = std::abs(r(i, i));
    if (mod > 0.0) q.col(i) *= r(i, i) / mod;
  }
  return q;
}

cplx unit(double turns) { return std::polar(1.0, kTwoPi * turns); }

void require_dim(int dim, int min_dim = 1) {
  if (dim < min_dim || dim > kMaxDim) {
    throw Error(ErrorKind::invalid_input, "dimension " + std::to_string(dim) + " outside [" +
                                              std::to_string(min_dim) + ", " +
                                              std::to_string(kMaxDim) + "]");
  }
}

void require_unimodular(std::span<const cplx> values) {
  for (const cplx& z : values) {
    if (!(std::abs(std::abs(z) - 1.0) <= 1e-12)) {
      throw Error(ErrorKind::invalid_input, "eigenvalue (" + std::to_string(z.real()) + ", " +
                                                std::to_string(z.imag()) + ") is not unimodular");
    }
  }
}

// Singular values in [1, cap], log-uniform; endpoints attained when forced.
Eigen::VectorXd singular_profile(int dim, double cap, bool force_endpoints, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd s(dim);
  for (int i = 0; i < dim; ++i) s(i) = std::pow(cap, u(rng));
  if (force_endpoints && dim >= 2) {
    s(0) = 1.0;
    s(dim - 1) = cap;
  }
  return s;
}

Mat similarity(int dim, double cap, bool force_endpoints, Rng& rng) {
  const Mat u = haar(dim, rng);
  const Mat v = haar(dim, rng);
  const Eigen::VectorXd s = singular_profile(dim, cap, force_endpoints, rng);
  return u * s.cast<cplx>().asDiagonal() * v.adjoint();
}

Mat conjugate(const Mat& s, const Mat& core) {
  return s * core * s.fullPivLu().inverse();
}

bool is_fixture_oblique(int dim, std::span<const cplx> eigs, double cond_cap, std::uint64_t seed) {
  const double golden_sq = (3.0 + std::sqrt(5.0)) / 2.0;  // cond([[1,1],[0,1]])
  return dim == 2 && seed == 0 && eigs.size() == 2 && eigs[0] == cplx(1.0, 0.0) &&
         eigs[1] == cplx(-1.0, 0.0) && cond_cap >= golden_sq;
}

}  // namespace

Mat haar_unitary(int dim, std::uint64_t seed) {
  require_dim(dim);
  Rng rng(seed);
  return haar(dim, rng);
}

std::vector<cplx> spread_unimodular(int count, double min_gap, std::uint64_t seed) {
  if (count < 0 || (count > 1 && min_gap * count >= kTwoPi)) {
    throw Error(ErrorKind::invalid_input, "cannot place " + std::to_string(count) +
                                              " unimodular points with gap " + std::to_string(min_gap));
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> turn(0.0, 1.0);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx z = unit(turn(rng));
    const bool far = std::all_of(out.begin(), out.end(),
                                 [&](cplx w) { return std::abs(w - z) >= min_gap; });
    if (far) out.push_back(z);
  }
  return out;
}

CMatrix gen_unitary_finite_spectrum(int dim, std::span<const cplx> eigenvalues, std::uint64_t seed) {
  require_dim(dim);
  if (eigenvalues.empty() || static_cast<int>(eigenvalues.size()) > dim) {
    throw Error(ErrorKind::invalid_input, "need between 1 and dim eigenvalues");
  }
  require_unimodular(eigenvalues);
  Rng rng(seed);
  const Mat u = haar(dim, rng);
  std::uniform_int_distribution<std::size_t> pick(0, eigenvalues.size() - 1);
  Vec d(dim);
  for (int i = 0; i < dim; ++i) {
    d(i) = i < static_cast<int>(eigenvalues.size()) ? eigenvalues[static_cast<std::size_t>(i)]
                                                     : eigenvalues[pick(rng)];
  }
  return CMatrix(u * d.asDiagonal() * u.adjoint());
}

CMatrix gen_oblique(int dim, std::span<const cplx> eigenvalues, double cond_cap, std::uint64_t seed,
                    bool require_oblique) {
  require_dim(dim);
  if (static_cast<int>(eigenvalues.size()) != dim) {
    throw Error(ErrorKind::invalid_input, "oblique generator needs exactly dim eigenvalues");
  }
  require_unimodular(eigenvalues);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) {
      if (std::abs(eigenvalues[i] - eigenvalues[j]) <= 1e-8) {
        throw Error(ErrorKind::invalid_input, "oblique generator needs distinct eigenvalues");
      }
    }
  }
  if (!(cond_cap >= 1.0) || !std::isfinite(cond_cap)) {
    throw Error(ErrorKind::invalid_input, "cond_cap must be a finite number >= 1");
  }
  if (require_oblique && (cond_cap == 1.0 || dim == 1)) {
    throw Error(ErrorKind::contradiction, "a non-unitary similarity needs cond_cap > 1 and dim >= 2");
  }

  Vec d(dim);
  for (int i = 0; i < dim; ++i) d(i) = eigenvalues[static_cast<std::size_t>(i)];
  const Mat core = d.asDiagonal();

  if (is_fixture_oblique(dim, eigenvalues, cond_cap, seed)) {
    Mat s(2, 2);
    s << 1.0, 1.0, 0.0, 1.0;
    return CMatrix(conjugate(s, core));
  }

  Rng rng(seed);
  if (cond_cap == 1.0 || dim == 1) {
    const Mat u = haar(dim, rng);
    return CMatrix(u * core * u.adjoint());
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Mat s = similarity(dim, cond_cap, true, rng);
    if ((s.adjoint() * s - Mat::Identity(dim, dim)).norm() > 0.1) return CMatrix(conjugate(s, core));
  }
  throw Error(ErrorKind::contradiction,
              "no similarity with cond <= " + std::to_string(cond_cap) + " is visibly non-unitary");
}

CMatrix gen_jordan_perturbation(int dim, cplx alpha, double nilpotent_scale, std::uint64_t seed) {
  if (dim < 2) {
    throw Error(ErrorKind::contradiction, "no nonzero square-zero matrix exists in dimension < 2");
  }
  require_dim(dim, 2);
  require_unimodular(std::span<const cplx>(&alpha, 1));
  if (!(nilpotent_scale > 0.0) || !std::isfinite(nilpotent_scale)) {
    throw Error(ErrorKind::invalid_input, "nilpotent scale must be positive");
  }

  Mat n;
  if (dim == 2 && alpha == cplx(1.0, 0.0) && nilpotent_scale == 1.0 && seed == 0) {
    n = Mat::Zero(2, 2);
    n(0, 1) = 1.0;
  } else {
    Rng rng(seed);
    const Mat q = haar(dim, rng);
    std::uniform_int_distribution<int> pick_rank(1, dim / 2);
    const int k = pick_rank(rng);
    // range(B) = span q_0..q_{k-1} lies in ker(C) = span(q_k..q_{2k-1})^perp.
    const Mat b = q.leftCols(k) * gaussian(k, k, rng);
    const Mat c = gaussian(k, k, rng) * q.middleCols(k, k).adjoint();
    n = b * c;
    n *= nilpotent_scale / operator_norm(n);
  }
  Mat t = n;
  t.diagonal().array() += alpha;
  return CMatrix(std::move(t));
}

CMatrix gen_scalar_rotation(int dim, double theta) {
  require_dim(dim);
  if (!std::isfinite(theta)) throw Error(ErrorKind::invalid_input, "theta must be finite");
  cplx z;
  const double quarters = theta * 4.0;
  if (quarters == std::floor(quarters)) {
    static constexpr cplx kQuarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const auto q = static_cast<long long>(std::fmod(quarters, 4.0));
    z = kQuarter[(q + 4) % 4];
  } else {
    z = unit(theta);
  }
  return CMatrix(Mat::Identity(dim, dim) * z);
}

CMatrix gen_normaloid_nonnormal(int dim, double rho, std::uint64_t seed, bool zero_k) {
  require_dim(dim, 3);
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::invalid_input, "rho must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Mat core = Mat::Zero(dim, dim);
  core(0, 0) = rho * unit(u(rng));
  for (int i = 1; i < dim - 2; ++i) core(i, i) = 0.9 * rho * u(rng) * unit(u(rng));
  if (!zero_k) {
    // ||K||_F^2 <= (0.25 + 0.25 + 0.16) rho^2 keeps ||K|| strictly below rho.
    const int k = dim - 2;
    core(k, k) = 0.5 * rho * u(rng) * unit(u(rng));
    core(k + 1, k + 1) = 0.5 * rho * u(rng) * unit(u(rng));
    core(k, k + 1) = rho * (0.1 + 0.3 * u(rng)) * unit(u(rng));
  }
  const Mat w = haar(dim, rng);
  return CMatrix(w * core * w.adjoint());
}

CMatrix gen_normal(int dim, int unimodular, double inner_radius, std::uint64_t seed) {
  require_dim(dim);
  if (unimodular < 0 || unimodular > dim || !(inner_radius >= 0.0) || inner_radius >= 1.0) {
    throw Error(ErrorKind::invalid_input, "normal generator needs 0 <= unimodular <= dim, inner radius in [0, 1)");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec d(dim);
  for (int i = 0; i < dim; ++i) {
    const double mod = i < unimodular ? 1.0 : inner_radius * u(rng);
    d(i) = mod * unit(u(rng));
  }
  const Mat w = haar(dim, rng);
  return CMatrix(w * d.asDiagonal() * w.adjoint());
}

PlantedJordan gen_planted_jordan(int dim, double radius, double cond_cap, std::uint64_t seed,
                                 int max_block) {
  require_dim(dim);
  if (!(radius >= 0.0) || radius > 1.0) throw Error(ErrorKind::invalid_input, "radius must lie in [0, 1]");
  if (!(cond_cap >= 1.0) || cond_cap > 100.0) {
    throw Error(ErrorKind::invalid_input, "planted similarity needs 1 <= cond_cap <= 100");
  }
  if (max_block < 1) throw Error(ErrorKind::invalid_input, "max_block must be positive");
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<int> sizes;
  for (int left = dim; left > 0;) {
    std::uniform_int_distribution<int> pick(1, std::min(max_block, left));
    sizes.push_back(pick(rng));
    left -= sizes.back();
  }

  std::vector<cplx> roots;
  if (radius == 0.0) {
    roots.push_back(0.0);
  } else {
    std::uniform_int_distribution<int> pick_count(1, std::min<int>(4, static_cast<int>(sizes.size())));
    const int count = pick_count(rng);
    roots.push_back(radius * unit(u(rng)));
    for (int attempts = 0; static_cast<int>(roots.size()) < count && attempts < 10000; ++attempts) {
      const cplx z = radius * std::sqrt(u(rng)) * unit(u(rng));
      const bool far = std::all_of(roots.begin(), roots.end(),
                                   [&](cplx w) { return std::abs(w - z) >= 0.2; });
      if (far) roots.push_back(z);
    }
  }

  // The first blocks go one per root so that every root is used.
  std::vector<std::size_t> owner(sizes.size());
  std::uniform_int_distribution<std::size_t> pick_root(0, roots.size() - 1);
  for (std::size_t b = 0; b < sizes.size(); ++b) owner[b] = b < roots.size() ? b : pick_root(rng);
  roots.resize(std::min(roots.size(), sizes.size()));

  Mat j = Mat::Zero(dim, dim);
  std::vector<int> index(roots.size(), 0);
  int at = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    for (int i = 0; i < sizes[b]; ++i) {
      j(at + i, at + i) = roots[owner[b]];
      if (i + 1 < sizes[b]) j(at + i, at + i + 1) = 1.0;
    }
    index[owner[b]] = std::max(index[owner[b]], sizes[b]);
    at += sizes[b];
  }

  PlantedJordan out{CMatrix(conjugate(similarity(dim, cond_cap, false, rng), j)), {}, sizes};
  for (std::size_t r = 0; r < roots.size(); ++r) out.planted.roots.push_back({roots[r], index[r]});
  std::sort(out.planted.roots.begin(), out.planted.roots.end(), [](const Root& a, const Root& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return out;
}

namespace fixtures {

CMatrix dft4() {
  static constexpr cplx kPowers[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  Mat f(4, 4);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) f(j, k) = 0.5 * kPowers[(j * k) % 4];
  }
  return CMatrix(std::move(f));
}

CMatrix oblique_counterexample() { return CMatrix::from_rows({{1.0, -2.0}, {0.0, -1.0}}); }

CMatrix jordan_block() { return CMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}); }

CMatrix normaloid_fixture() {
  return CMatrix::from_rows({{3.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}});
}

}  // namespace fixtures

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::unitary_finite_spectrum: return "unitary-finite-spectrum";
    case InstanceKind::oblique_diagonalizable: return "oblique-diagonalizable";
    case InstanceKind::jordan_perturbation: return "jordan-perturbation";
    case InstanceKind::scalar_rotation: return "scalar-rotation";
    case InstanceKind::normaloid_nonnormal: return "normaloid-nonnormal";
    case InstanceKind::planted_jordan: return "planted-jordan";
  }
  return "unknown";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
  struct Alias {
    std::string_view name;
    InstanceKind kind;
  };
  static constexpr Alias kAliases[] = {
      {"unitary", InstanceKind::unitary_finite_spectrum},
      {"oblique", InstanceKind::oblique_diagonalizable},
      {"jordan", InstanceKind::jordan_perturbation},
      {"rotation", InstanceKind::scalar_rotation},
      {"normaloid", InstanceKind::normaloid_nonnormal},
      {"planted", InstanceKind::planted_jordan},
  };
  for (const auto& alias : kAliases) {
    if (name == alias.name || name == to_string(alias.kind)) return alias.kind;
  }
  return std::nullopt;
}

CMatrix generate(const InstanceSpec& spec) {
  switch (spec.kind) {
    case InstanceKind::unitary_finite_spectrum:
      return gen_unitary_finite_spectrum(spec.dim, spec.eigenvalues, spec.seed);
    case InstanceKind::oblique_diagonalizable:
      return gen_oblique(spec.dim, spec.eigenvalues, spec.cond_cap, spec.seed);
    case InstanceKind::jordan_perturbation:
      return gen_jordan_perturbation(spec.dim, spec.eigenvalues.empty() ? cplx(1.0) : spec.eigenvalues[0],
                                     spec.scale, spec.seed);
    case InstanceKind::scalar_rotation:
      return gen_scalar_rotation(spec.dim, spec.theta);
    case InstanceKind::normaloid_nonnormal:
      return gen_normaloid_nonnormal(spec.dim, spec.scale, spec.seed);
    case InstanceKind::planted_jordan:
      return gen_planted_jordan(spec.dim, spec.scale, spec.cond_cap, spec.seed).matrix;
  }
  throw Error(ErrorKind::invalid_input, "unknown instance kind");
}

}  // namespace aolab
