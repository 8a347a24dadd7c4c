#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qinvert::cli {

/// Run one command line (without the program name). Reports and scans print
/// to `out` and are optionally written to files; diagnostics go to `err`.
/// Exit status: 0 success, 1 domain error, 2 usage/parse/file error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qinvert::cli
