#pragma once

// Seeded invariant suites behind the `check` subcommand: each suite runs a
// batch of randomized structural checks and reports counts and the worst
// residual seen.

#include <cstdint>
#include <string>
#include <vector>

#include "sdcar/types.hpp"

namespace sdcar {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> notes;  // one per failure
};

// which: all | hilbert | quasifree | fock | modular | entropy | majorana
std::vector<SuiteResult> run_check_suites(const std::string& which,
                                          std::uint64_t seed);

}  // namespace sdcar
