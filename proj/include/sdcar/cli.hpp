#pragma once

// Batch front-end. Exit codes: 0 success/pass, 1 input error,
// 2 verification failure.

#include <string>
#include <vector>

namespace sdcar {

// args excludes the program name.
int run_cli(std::vector<std::string> args);

}  // namespace sdcar
