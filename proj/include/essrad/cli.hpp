#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "essrad/chain.hpp"
#include "essrad/json_io.hpp"

namespace essrad {

inline constexpr const char* toolkit_version = "0.1.0";

/// Reads an environment variable; empty when unset.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

/// Default budgets with the ESSRAD_* environment overrides applied.
/// `overrides` receives the variables that were set, verbatim.
/// Throws DomainError on a malformed value.
EvalConfig config_from_env(const EnvLookup& env, io::json* overrides = nullptr);
/// Tolerances and budgets of a configuration, for report headers.
io::json config_echo(const EvalConfig& cfg);

/// Exit codes shared by every command.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_input_error = 2, exit_inconclusive = 3 };

/// Entry point of the command-line tool; `args` excludes the program name.
/// Chain ids resolve against `catalog`, or the built-in registry when null.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_env, const std::vector<ChainSpec>* catalog = nullptr);

}  // namespace essrad
