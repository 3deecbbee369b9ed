#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace depthlab {

// Whole-program entry point: parses argv (program name excluded), runs the
// subcommand, writes reports atomically. Exit 0 on success, 1 on domain
// errors, 2 on usage/config errors; diagnostics go to err as one line.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hard CLI ceilings on the fst family; larger requests exit 2.
inline constexpr unsigned kCliMaxStates = 3;
inline constexpr unsigned kCliMaxOut = 2;

}  // namespace depthlab
