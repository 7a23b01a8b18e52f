#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boxrevive::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

/// Parses argv (argv[0] is the program name), runs one subcommand of
/// {spectrum, carpet, wigner, subplanck, revivals, fidelity} and writes its
/// artifacts plus manifest.txt into the output directory.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Keys every manifest of `subcommand` contains.
std::vector<std::string> manifest_schema(std::string_view subcommand);

}  // namespace boxrevive::cli
