/**
 * @file cli.hpp
 * @brief Entry point of the tiletool command-line front end.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a domain error (its kind is printed to `err`), 2 on a usage
/// error or malformed config.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tiling::cli
