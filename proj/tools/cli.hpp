#pragma once

#include <iosfwd>

namespace modal::cli {

/// Runs the command line; returns the process exit code. Reports go to out (or --out), messages to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modal::cli
