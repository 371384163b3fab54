#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aolab/matrix.hpp"
#include "aolab/sequence.hpp"

namespace aolab::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInconsistent = 2,
  kSuiteFailure = 3,
};

struct RunConfig {
  AnalysisConfig analysis;
  int trials = 100;
};

/// "1", "-0.5+2i", "i", "-3.25e-1i", or "@t" for e^{2 pi i t} (exact at quarter turns).
cplx parse_complex(std::string_view text);
std::vector<cplx> parse_eigenvalues(std::string_view csv);

struct PropertyTally {
  std::string name;
  int passed = 0;
  int total = 0;
};

/// Seeded property suites: theorem, growth, stability, scalar or all.
/// Trial t uses seed mix_seed(seed, t); tallies come back in a fixed order.
std::vector<PropertyTally> run_suite(std::string_view suite, const RunConfig& cfg);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial);

/// Full command line (argv[0] included). Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aolab::cli
