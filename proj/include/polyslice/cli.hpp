#pragma once

#include <string>
#include <vector>

namespace polyslice::cli {

// Exit codes: 0 success (all checks passing), 1 failed verification check,
// 2 usage or domain error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace polyslice::cli
