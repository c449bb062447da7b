#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitzeta::cli {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotCertified = 2;
constexpr int kAbscissaTooClose = 3;

// Runs one command line (without the program name). Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitzeta::cli
