#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vrs::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `vrs` tool.  `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Expands `--config file.json` into command line tokens.  Keys are long
/// option names; options already on the command line win.  A "subcommand"
/// key supplies the subcommand when none is given.
std::vector<std::string> expand_config(std::vector<std::string> args);

}  // namespace vrs::tools
