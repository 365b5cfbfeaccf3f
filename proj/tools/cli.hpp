#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aml::cli {

/// Runs one invocation; `args` excludes the program name.
/// Exit codes: 0 success, 1 semantic failure, 2 usage or format error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aml::cli
