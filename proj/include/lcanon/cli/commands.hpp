#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcanon::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2 };

// Entry point of the lcanon tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcanon::cli
