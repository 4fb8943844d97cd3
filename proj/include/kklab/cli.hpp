#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kklab::cli {

/// Runs one command line (args excludes the program name). Exit codes:
/// 0 success, 1 usage, parse or I/O error, 2 precondition violation,
/// 3 resource guard refusal.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace kklab::cli
