#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lks::cli {

// Runs the lks command line (args exclude the program name) and returns the process exit code:
// 0 success, 2 geometric degeneracy, 3 invalid input, 4 numerical failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lks::cli
