#pragma once

#include <iosfwd>

namespace ssd::cli {

/// Exit-code protocol shared by every subcommand.
enum ExitCode : int {
    exit_pass = 0,
    exit_property_failure = 1,
    exit_input_error = 2,
    exit_precondition = 3,
};

/// Entry point of the `ssd_lab` tool. Subcommands: gen, forward, check-dual,
/// extract, counterexample, bench.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ssd::cli
