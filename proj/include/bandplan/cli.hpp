#pragma once
#include <string>
#include <vector>

namespace bandplan::cli {

// Exit codes: 0 success, 2 usage or parse error, 3 infeasible configuration,
// 4 scenario-hash mismatch between a report and the scenario it is validated
// against.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without the program name

}  // namespace bandplan::cli
