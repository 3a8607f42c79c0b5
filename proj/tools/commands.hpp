#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bihelix::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 success (verify: biharmonic), 1 verify found a non-biharmonic
/// curve or tensors found a mismatch, 2 bad input or any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bihelix::cli
