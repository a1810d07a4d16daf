#pragma once

// Subcommands of the hyperperc driver. Each command reads a fully merged
// ExperimentConfig (defaults, then config file, then command-line flags),
// writes its artifacts atomically and returns the process exit code.

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperperc/config.hpp"
#include "hyperperc/error.hpp"

namespace hyperperc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Config-type problems (bad keys, values, caps) map to 2, the rest to 3.
int exit_code_for(ErrorKind kind);

struct KeySpec {
  std::string key;
  std::string default_value;
  std::string help;
};

const std::vector<std::string>& command_names();
/// Throws Error{Config} for an unknown command.
const std::vector<KeySpec>& command_keys(const std::string& command);
ExperimentConfig default_config(const std::string& command);

/// Rejects keys the command does not know.
void merge_config(ExperimentConfig& into, const ExperimentConfig& from);

/// Runs the command; diagnostics go to `err`. Never throws Error.
int run_command(const ExperimentConfig& config, std::ostream& err);

}  // namespace hyperperc
