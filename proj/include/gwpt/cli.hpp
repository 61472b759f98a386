#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gwpt/json_io.hpp"

namespace gwpt {

// Result of one CLI invocation. `output` is the CommandResult JSON document
// ({"status", "payload", "diagnostics"}); exit codes: 0 ok, 1 user error,
// 2 internal invariant failure.
struct CommandResult {
    int exit_code = 0;
    json output;

    std::string dump() const { return output.dump(2) + "\n"; }
};

// Dispatches one subcommand. `args` excludes the program name. Commands that
// consume a JSON document read it from the file given as a positional
// argument, or from `read_input` (stdin in the real tool) when absent.
CommandResult run_command(const std::vector<std::string> &args,
                          const std::function<std::string()> &read_input);

}  // namespace gwpt
