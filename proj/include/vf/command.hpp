#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vf {

namespace exit_code {
inline constexpr int ok = 0;
/// A falsifier run ended inconclusive, or repro found mismatches.
inline constexpr int inconclusive = 1;
inline constexpr int usage = 2;
/// Internal invariant broken (a bug, not bad input).
inline constexpr int internal = 3;
}  // namespace exit_code

/// Runs `vf <args...>` (args excludes the program name). Subcommands: basis,
/// expand, op2, inner, falsify, repro. VF_MAX_DEG (default 8) bounds every
/// degree bound requested on the command line or in a spec.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vf
