#pragma once

#include <string>
#include <vector>

namespace slowlight {

// Command-line entry point. Exit codes: 0 success, 1 config/usage error,
// 2 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace slowlight
