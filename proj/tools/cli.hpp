#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpt::cli {

/// Runs one subcommand. Returns 0 on success, 1 on input or usage errors and
/// 2 on validation or precondition failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpt::cli
