#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hype::cli {

/// Exit codes: 0 success, 1 check or audit failure, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Swaps the two sides of the last contraposition line of a proof script, or
/// else of the last cut. Returns the new text and the 1-based line touched,
/// or line 0 when the script has neither.
std::pair<std::string, int> mutate_script(const std::string& script);

/// Directory holding proofs/ and universes/ when no --root is given.
std::string default_root();

}  // namespace hype::cli
