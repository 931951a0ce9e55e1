#pragma once

// Command-line front end. run() is the whole program minus the process
// boundary, so it can be driven in-process by the acceptance battery.

#include <ostream>
#include <string>
#include <vector>

namespace dhl::cli {

inline constexpr const char* kToolName = "dhlab";
inline constexpr const char* kVersion = "1.0.0";

/// args excludes the program name. Exit status: 0 success, 1 precondition
/// failure, 2 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of all subcommands, in help order.
std::vector<std::string> command_names();

}  // namespace dhl::cli
