#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aolab {

enum class ErrorKind {
  invalid_input,
  size_limit,
  numerical_failure,
  ill_conditioned_spectrum,
  decomposition_failure,
  inconsistency,
  precondition,
  out_of_scope,
  contradiction,
};

std::string_view to_string(ErrorKind kind);

// All library failures derive from Error; callers switch on kind() when the
// distinction matters (the CLI maps it onto exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when eigenvalue clusters cannot be separated unambiguously: two
/// final clusters sit closer than twice the merge radius. Both candidate
/// clusterings (as cluster centers) are attached.
class IllConditionedSpectrum : public Error {
 public:
  IllConditionedSpectrum(const std::string& what,
                         std::vector<std::complex<double>> fine,
                         std::vector<std::complex<double>> coarse);

  const std::vector<std::complex<double>>& fine() const noexcept { return fine_; }
  const std::vector<std::complex<double>>& coarse() const noexcept { return coarse_; }

 private:
  std::vector<std::complex<double>> fine_;
  std::vector<std::complex<double>> coarse_;
};

}  // namespace aolab
