#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adhesia {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a domain error (reported as {"error": {...}} on `out`) and 2 on a
/// usage error (reported on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adhesia
