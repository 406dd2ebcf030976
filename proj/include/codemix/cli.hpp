#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace codemix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the codemix-senti command line with args (excluding the program
// name), writing to out/err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codemix::cli
