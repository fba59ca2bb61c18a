#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treeapprox {

inline constexpr const char* tool_version = "0.1.0";

// Runs one command line (without the program name). Standard input and
// output stand in for "-" or omitted file arguments. Returns the exit status:
// 0 success, 2 input or usage error, 3 a checked bound failed.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treeapprox
