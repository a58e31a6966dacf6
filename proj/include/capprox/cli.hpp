#pragma once

#include <string>
#include <vector>

namespace capprox::cli {

// Runs the command-line driver on argv (program name excluded) and
// returns the process exit code: 0 success, 1 usage or configuration
// error, 2 soundness violation, 3 numeric failure. Errors print one
// JSON line {"error": kind, "message": ...} on stdout.
int run_cli(std::vector<std::string> args);

}  // namespace capprox::cli
