#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace median {

/// Runs the medianspace command line on args (program name excluded).
/// Returns 0 on success, 1 when a check fails, 2 on usage or input errors.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace median
