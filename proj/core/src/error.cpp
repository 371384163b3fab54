#include "aolab/error.hpp"

#include <utility>

namespace aolab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::ill_conditioned_spectrum: return "ill-conditioned-spectrum";
    case ErrorKind::decomposition_failure: return "decomposition-failure";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::out_of_scope: return "out-of-scope";
    case ErrorKind::contradiction: return "contradiction";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

IllConditionedSpectrum::IllConditionedSpectrum(const std::string& what,
                                               std::vector<std::complex<double>> fine,
                                               std::vector<std::complex<double>> coarse)
    : Error(ErrorKind::ill_conditioned_spectrum, what),
      fine_(std::move(fine)),
      coarse_(std::move(coarse)) {}

}  // namespace aolab
