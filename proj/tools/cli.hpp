#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twfo::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on an undefined or negative verdict and 2 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twfo::cli
