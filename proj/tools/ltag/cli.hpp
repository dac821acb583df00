#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltag::cli {

/// Runs one command line (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltag::cli
