#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wheelperc {

// Exit codes: 0 success, 1 a validation report found mismatches, 2 usage error
// or resource cap.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wheelperc
