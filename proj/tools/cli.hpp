#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace setvar::cli {

/// Exit codes: 0 success, 1 negative verdict, 2 input or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setvar::cli
