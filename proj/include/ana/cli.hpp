#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ana/harness.hpp"

namespace ana::cli {

/// A fully resolved command line: explicit flags override config-file
/// values, defaults fill the rest.
struct CliInvocation {
    std::string subcommand;
    RunConfig config;
    Backend backend = Backend::vector;
    std::vector<std::string> functions;  // bench targets; empty = whole registry
    int runs = 10;
    int warmups = 3;
    int reps = 5;
    std::string out_path;  // empty = standard output
    std::string format;    // csv|json; empty = subcommand default
};

/// Parse arguments (without the program name). Throws CLI::ParseError on
/// usage errors.
CliInvocation parse(const std::vector<std::string>& args);

/// Execute a parsed invocation, writing data to --out (or `out`) and
/// diagnostics to `err`. Exit codes: 0 success, 2 equivalence divergence,
/// 3 unknown function, 4 I/O failure.
int execute(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

/// Process entry point used by main().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ana::cli
