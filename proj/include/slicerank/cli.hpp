#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slicerank::cli {

// Exit status: 0 success, 1 a verification verdict came back negative,
// 2 usage, parse or guard errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicerank::cli
