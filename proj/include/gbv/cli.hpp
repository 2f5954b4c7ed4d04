#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gbv::cli {

enum ExitCode : int { kOk = 0, kConfig = 2, kCapacity = 3, kIo = 4 };

/// Runs the command-line driver. Reports go to `out` (or to --out), errors
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2,4,8" or a geometric range "a:b:steps" (endpoints included).
std::vector<double> parse_grid(const std::string& text);

} // namespace gbv::cli
