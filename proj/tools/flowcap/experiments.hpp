#ifndef FLOWCAP_TOOLS_EXPERIMENTS_HPP
#define FLOWCAP_TOOLS_EXPERIMENTS_HPP

#include <string>
#include <vector>

namespace flowcap::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalError = 3;
inline constexpr int kToleranceError = 4;

/// Schema/invariant diagnostics without running; empty means runnable.
std::vector<std::string> validate_config(const std::string& path);

/// Runs the experiment described by the config file; artifacts land in the
/// config's output directory (FLOWCAP_OUTPUT_DIR overrides it).
int run_config(const std::string& path);

/// Built-in named fields and one example config per experiment kind.
void print_catalog();

}  // namespace flowcap::cli

#endif
