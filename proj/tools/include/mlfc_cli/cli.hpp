#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlfc::cli {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerdict = 4;  // a decay or envelope check did not pass

// args excludes the program name. JSON (or the mlf eval line) goes to out,
// the human summary and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace mlfc::cli
