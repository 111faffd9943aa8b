#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dcmd::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// "26x51" -> {26, 51}.
std::pair<std::size_t, std::size_t> parse_grid_size(const std::string& text);

/// Subcommands simulate, steady, verify, convergence. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcmd::io
