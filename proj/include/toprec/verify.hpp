#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toprec/classical.hpp"
#include "toprec/table.hpp"

namespace toprec {

struct CheckRecord {
  std::string name;
  bool ok = true;
  std::string detail;
  double seconds = 0;  // wall time, not part of any emitted file
};

struct VerifyOptions {
  int chi_max = 2;
  int r_max = 3;
  int duality_order = 2;
  std::uint64_t seed = kDefaultSeed;
};

// Runs the invariant suites on every stable entry with 2g-2+m+n <= chi_max. Missing
// entries or thrown errors are recorded as failures of the named check.
std::vector<CheckRecord> run_verify_suite(const OmegaTable& t, const VerifyOptions& opt);

}  // namespace toprec
