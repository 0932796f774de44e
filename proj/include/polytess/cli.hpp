// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code: 0 success, 2 usage or configuration
// error, 3 I/O error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polytess::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace polytess::cli
