#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aolab/algebraic.hpp"
#include "aolab/matrix.hpp"

namespace aolab {

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// of diag(R) folded back into Q.
Mat haar_unitary(int dim, std::uint64_t seed);

/// `count` unimodular values with pairwise distance >= min_gap.
std::vector<cplx> spread_unimodular(int count, double min_gap, std::uint64_t seed);

/// U D U* with D drawn from `eigenvalues` (each used at least once).
CMatrix gen_unitary_finite_spectrum(int dim, std::span<const cplx> eigenvalues, std::uint64_t seed);

/// S diag(eigenvalues) S^{-1}, S = U Sigma V* with singular values in
/// [1, cond_cap] and both endpoints attained. cond_cap == 1 gives a unitary
/// S; with require_oblique that is a contradiction. S is redrawn until
/// ||S*S - I||_F > 0.1.
CMatrix gen_oblique(int dim, std::span<const cplx> eigenvalues, double cond_cap,
                    std::uint64_t seed, bool require_oblique = false);

/// alpha I + N with N = B C, C B = 0 and ||N|| = nilpotent_scale.
CMatrix gen_jordan_perturbation(int dim, cplx alpha, double nilpotent_scale, std::uint64_t seed);

/// e^{2 pi i theta} I; exact at quarter turns.
CMatrix gen_scalar_rotation(int dim, double theta);

/// W (D + K) W* with D diagonal of dim - 2 entries whose largest modulus is
/// rho, every other modulus <= 0.9 rho, and K a 2x2 non-normal upper
/// triangular block with ||K|| < rho (K = 0 when zero_k). W is Haar.
CMatrix gen_normaloid_nonnormal(int dim, double rho, std::uint64_t seed, bool zero_k = false);

/// U diag(lambda) U* with `unimodular` eigenvalues on the circle and the
/// rest of modulus <= inner_radius.
CMatrix gen_normal(int dim, int unimodular, double inner_radius, std::uint64_t seed);

struct PlantedJordan {
  CMatrix matrix;
  MinimalPoly planted;
  std::vector<int> block_sizes;  // Jordan block sizes in the order they were placed
};

/// S J S^{-1} with J a random Jordan matrix (blocks of size <= max_block)
/// and cond(S) <= cond_cap <= 100. Roots are pairwise >= 0.2 apart, the
/// largest modulus equals `radius`; radius == 0 plants a nilpotent matrix.
PlantedJordan gen_planted_jordan(int dim, double radius, double cond_cap, std::uint64_t seed,
                                 int max_block = 3);

namespace fixtures {
CMatrix dft4();                    // (1/2) [(-i)^{jk}]
CMatrix oblique_counterexample();  // S diag(1, -1) S^{-1}, S = [[1,1],[0,1]]
CMatrix jordan_block();            // [[1,1],[0,1]]
CMatrix normaloid_fixture();       // diag(3) + [[0,1],[0,0]]
inline constexpr double kIrrationalTheta = 1.4142135623730951;  // sqrt(2)
}  // namespace fixtures

enum class InstanceKind {
  unitary_finite_spectrum,
  oblique_diagonalizable,
  jordan_perturbation,
  scalar_rotation,
  normaloid_nonnormal,
  planted_jordan,
};

std::string_view to_string(InstanceKind kind);

// Accepts the hyphenated names and the short forms unitary, oblique, jordan,
// rotation, normaloid, planted.
std::optional<InstanceKind> parse_instance_kind(std::string_view name);

/// Kind-specific reading of the fields:
///   eigenvalues  spectrum (unitary, oblique); alpha = eigenvalues[0] (jordan, default 1)
///   cond_cap     oblique, planted
///   scale        ||N|| (jordan), rho (normaloid), spectral radius (planted)
///   theta        rotation angle in turns
struct InstanceSpec {
  InstanceKind kind = InstanceKind::unitary_finite_spectrum;
  int dim = 1;
  std::vector<cplx> eigenvalues;
  std::uint64_t seed = 0;
  double cond_cap = 50.0;
  double scale = 1.0;
  double theta = 0.0;
};

CMatrix generate(const InstanceSpec& spec);

}  // namespace aolab
