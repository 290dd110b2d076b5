#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tsa::cli {

// Exit codes: 0 success, 1 user/input error, 2 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsa::cli
