#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinent/model.hpp"

namespace spinent::cli {

struct VerifyOptions {
  int two_s_max = 8;
  int cases = 100;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::optional<int> only_case;  // replay a single case index
};

// Case `index` is a pure function of (seed, index, two_s_max).
struct VerifyCase {
  int index = 0;
  double x_max = 0.0;
  CoefficientSet set;
};
VerifyCase draw_verify_case(std::uint64_t seed, int index, int two_s_max);

struct FamilyResult {
  std::string name;
  int passed = 0;
  int total = 0;
};

struct VerifyFailure {
  std::string family;
  int index = 0;
  std::string detail;
};

struct VerifyResult {
  std::vector<FamilyResult> families;
  std::vector<VerifyFailure> failures;
  bool ok() const { return failures.empty(); }
};

// monogamy, oracle-concurrence, oracle-tangle, symmetry, separability,
// quadratic-gap, phase, row-swap. The oracle-based families compare against --tol;
// monogamy uses the fixed floor 1e-12, quadratic-gap the halving ratio 0.4.
VerifyResult run_verify(const VerifyOptions& options);

}  // namespace spinent::cli
