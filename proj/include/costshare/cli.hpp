#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "costshare/core.hpp"

namespace costshare {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;

// Parses "subsets=20,orderings=9" style overrides onto `base`.
Caps parse_caps(const std::string& spec, Caps base = {});

// Entry point of the costshare tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costshare
