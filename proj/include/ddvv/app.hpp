// Command front end: check, search, suite, stats and replay.
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace ddvv {

/// Exit codes: 0 conforming, 1 usage or IO error, 2 violation found.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_violation = 2 };

struct CommandOutcome {
  nlohmann::json payload;
  int exit_status = exit_ok;
  std::string input_hash;
};

/// Runs `command` ∈ {check, search, suite, stats} from its stored config.
/// The payload depends on the config (and input bytes) only. Throws
/// InputError or std::invalid_argument on bad configs or inputs.
CommandOutcome execute_command(const std::string& command, const nlohmann::json& config);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddvv
