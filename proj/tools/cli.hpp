#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdepth::cli {

/// Runs the command line `args` (program name excluded) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdepth::cli
