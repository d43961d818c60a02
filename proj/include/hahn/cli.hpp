#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hahn {

/// Runs one hahnfield command (arguments without the program name).
/// Returns 0 on success, 1 on mathematical errors, 2 on usage, parse or
/// configuration errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hahn
