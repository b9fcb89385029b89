#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pbw {

// Exit codes shared by the command line and the Python module.
enum ExitCode { kExitPass = 0, kExitFail = 1, kExitInputError = 2 };

struct CommandOptions {
  unsigned maxdeg = 6;
  std::optional<unsigned> margin;    // default N + 2
  std::optional<unsigned> degbound;  // default 2N + 2
  std::uint64_t seed = 1;
  std::optional<int> v;              // random build-wedge data
  std::optional<unsigned> N;
  std::string family;
  std::map<std::string, std::string> bindings;  // parameter overrides
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitPass;
  std::optional<std::string> canonical;  // emitted verbatim when set
  std::string text() const;
};

// Options are validated before any computation; violations and malformed
// documents throw InputError.
CommandResult run_verify(const nlohmann::json& input, const CommandOptions& opt);
CommandResult run_hilbert(const nlohmann::json& input, const CommandOptions& opt);
CommandResult run_ainf_check(const nlohmann::json& input, const CommandOptions& opt);
CommandResult run_solve_as(const CommandOptions& opt);
// Without an input document the structure is random: odd N gets random l and
// forms, even N an abelian bracket with random forms.
CommandResult run_build_wedge(const nlohmann::json* input, const CommandOptions& opt);
CommandResult run_selftest();

// Turns an InputError from `body` into an input_error report and records the
// command name in non-canonical reports.
CommandResult run_reporting(const std::string& command, const std::function<CommandResult()>& body);

std::map<std::string, std::string> parse_bindings(const std::vector<std::string>& assignments);

}  // namespace pbw
