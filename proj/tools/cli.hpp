#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klearn::cli {

/// Runs the command-line tool on the given arguments (program name
/// excluded). Returns the process exit code: 0 success, 1 usage error,
/// 2 domain error, 3 budget exhausted. All output goes to the supplied
/// streams, so runs are reproducible and testable in-process.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace klearn::cli
