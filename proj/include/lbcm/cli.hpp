// Command-line front end. Exit codes: 0 all checks pass, 1 a mathematical
// check fails, 2 input error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lbcm {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbcm
