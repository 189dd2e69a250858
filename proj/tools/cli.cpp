#include "ana/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace ana::cli {
namespace {

// "LO:HI" with LO strictly below HI; both finite doubles.
std::string check_bounds_format(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) return "expected LO:HI";
    try {
        std::size_t used = 0;
        const double lo = std::stod(text.substr(0, colon), &used);
        if (used != colon) return "bad lower bound";
        const std::string hi_text = text.substr(colon + 1);
        const double hi = std::stod(hi_text, &used);
        if (used != hi_text.size()) return "bad upper bound";
        Bounds{lo, hi}.validate();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

Bounds parse_bounds(const std::string& text) {
    const std::size_t colon = text.find(':');
    return Bounds{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

struct RawOptions {
    std::string function;
    std::string bounds;
    std::string impl = "vector";
    std::string scope = "element";
    std::string config_path;
    bool function_required = false;
};

// Shared flags; every subcommand reads the same run configuration and can
// take values from a key = value config file (command line wins).
void add_common_options(CLI::App* sub, CliInvocation& inv, RawOptions& raw,
                        bool function_required) {
    raw.function_required = function_required;
    sub->add_option("--function", raw.function, "objective function name");
    sub->add_option("--dim", inv.config.dimension, "problem dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--agents", inv.config.agents, "population size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--iters", inv.config.iterations, "iterations per run")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--seed", inv.config.seed, "base random seed")->capture_default_str();
    sub->add_option("--bounds", raw.bounds, "search box as LO:HI")
        ->check(check_bounds_format);
    sub->add_option("--scope", raw.scope, "branch condition scope: element|agent")
        ->check(CLI::IsMember({"element", "agent"}))
        ->capture_default_str();
    sub->add_option("--out", inv.out_path, "output file (default: stdout)");
    sub->add_option("--config", raw.config_path,
                    "key = value configuration file; explicit flags win");
}

void add_impl_option(CLI::App* sub, RawOptions& raw) {
    sub->add_option("--impl", raw.impl, "execution backend: scalar|vector")
        ->check(CLI::IsMember({"scalar", "vector"}))
        ->capture_default_str();
}

struct AppState {
    CliInvocation inv;
    RawOptions raw;
    std::vector<std::string> bench_functions;
};

void build_app(CLI::App& app, AppState& state) {
    app.description("Ant nesting optimizer with scalar and vectorized backends");
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "single run; emits the convergence trace CSV");
    add_common_options(run_cmd, state.inv, state.raw, true);
    add_impl_option(run_cmd, state.raw);
    run_cmd->callback([&state] { state.inv.subcommand = "run"; });

    auto* compare_cmd =
        app.add_subcommand("compare", "time both backends and report the speedup as JSON");
    add_common_options(compare_cmd, state.inv, state.raw, true);
    compare_cmd->add_option("--warmups", state.inv.warmups, "discarded repetitions")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    compare_cmd->add_option("--reps", state.inv.reps, "timed repetitions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->callback([&state] { state.inv.subcommand = "compare"; });

    auto* bench_cmd = app.add_subcommand(
        "bench", "aggregate independent runs per function over both backends");
    add_common_options(bench_cmd, state.inv, state.raw, false);
    bench_cmd->add_option("--runs", state.inv.runs, "independent runs per row")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--format", state.inv.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->callback([&state] { state.inv.subcommand = "bench"; });

    auto* equiv_cmd = app.add_subcommand(
        "equiv", "check the backends produce bit-identical trajectories (exit 2 on divergence)");
    add_common_options(equiv_cmd, state.inv, state.raw, true);
    equiv_cmd->callback([&state] { state.inv.subcommand = "equiv"; });

    auto* trajectory_cmd =
        app.add_subcommand("trajectory", "emit per-iteration agent positions CSV");
    add_common_options(trajectory_cmd, state.inv, state.raw, true);
    add_impl_option(trajectory_cmd, state.raw);
    trajectory_cmd->callback([&state] { state.inv.subcommand = "trajectory"; });
}

int parse_checked_int(const std::string& key, const std::string& value, int minimum) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size() || parsed < minimum)
            throw CLI::ValidationError(key, "bad value '" + value + "'");
        return parsed;
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw CLI::ValidationError(key, "bad value '" + value + "'");
    }
}

// Line-oriented `key = value` with # comments. Keys are the long flag names
// of the active subcommand; values already given on the command line win.
void apply_config_file(CLI::App* sub, AppState& state) {
    std::ifstream file(state.raw.config_path);
    if (!file) throw CLI::FileError::Missing(state.raw.config_path);

    const auto trim = [](std::string s) {
        const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };

    std::string line;
    while (std::getline(file, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ConfigError("expected key = value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw CLI::ConfigError("expected key = value, got: " + line);
        if (key == "config") throw CLI::ConfigError("config files cannot nest");

        const CLI::Option* option = sub->get_option_no_throw("--" + key);
        if (option == nullptr)
            throw CLI::ConfigError("unknown key '" + key + "' for subcommand " + sub->get_name());
        if (option->count() > 0) continue;  // explicit flag wins

        CliInvocation& inv = state.inv;
        if (key == "function") {
            state.raw.function = value;
        } else if (key == "dim") {
            inv.config.dimension = parse_checked_int(key, value, 1);
        } else if (key == "agents") {
            inv.config.agents = parse_checked_int(key, value, 1);
        } else if (key == "iters") {
            inv.config.iterations = parse_checked_int(key, value, 0);
        } else if (key == "seed") {
            try {
                inv.config.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw CLI::ValidationError(key, "bad value '" + value + "'");
            }
        } else if (key == "bounds") {
            const std::string problem = check_bounds_format(value);
            if (!problem.empty()) throw CLI::ValidationError(key, problem);
            state.raw.bounds = value;
        } else if (key == "impl") {
            if (value != "scalar" && value != "vector")
                throw CLI::ValidationError(key, "expected scalar|vector");
            state.raw.impl = value;
        } else if (key == "scope") {
            if (value != "element" && value != "agent")
                throw CLI::ValidationError(key, "expected element|agent");
            state.raw.scope = value;
        } else if (key == "out") {
            inv.out_path = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json")
                throw CLI::ValidationError(key, "expected csv|json");
            inv.format = value;
        } else if (key == "runs") {
            inv.runs = parse_checked_int(key, value, 1);
        } else if (key == "warmups") {
            inv.warmups = parse_checked_int(key, value, 0);
        } else if (key == "reps") {
            inv.reps = parse_checked_int(key, value, 1);
        } else {
            throw CLI::ConfigError("unknown key '" + key + "'");
        }
    }
}

void finalize(CLI::App& app, AppState& state) {
    CliInvocation& inv = state.inv;
    CLI::App* sub = app.get_subcommands().front();
    if (!state.raw.config_path.empty()) apply_config_file(sub, state);
    if (state.raw.function_required && state.raw.function.empty())
        throw CLI::RequiredError("--function");
    if (!state.raw.bounds.empty()) inv.config.bounds = parse_bounds(state.raw.bounds);
    inv.backend = backend_from_string(state.raw.impl);
    inv.config.scope = condition_scope_from_string(state.raw.scope);
    if (!state.raw.function.empty()) {
        inv.config.function_id = state.raw.function;
        if (inv.subcommand == "bench") inv.functions = {state.raw.function};
    }
}

int execute_checked(const CliInvocation& inv, std::ostream& os, std::ostream& err) {
    if (inv.subcommand == "run") {
        const RunResult result =
            inv.backend == Backend::scalar ? run(inv.config) : run_vector(inv.config);
        write_trace_csv(result, os);
        return 0;
    }
    if (inv.subcommand == "compare") {
        const ComparisonReport report = compare(inv.config, inv.warmups, inv.reps);
        write_compare_json(report, os);
        if (!report.equivalent)
            err << "WARNING: backends are NOT trajectory-equivalent on this configuration\n";
        return 0;
    }
    if (inv.subcommand == "bench") {
        const std::vector<std::string> names =
            inv.functions.empty() ? registered_names() : inv.functions;
        std::vector<TrialStats> stats;
        stats.reserve(names.size() * 2);
        for (const auto& name : names) {
            RunConfig config = inv.config;
            config.function_id = name;
            stats.push_back(run_trials(config, Backend::scalar, inv.runs));
            stats.push_back(run_trials(config, Backend::vector, inv.runs));
        }
        const EmitFormat format =
            inv.format.empty() ? EmitFormat::csv : emit_format_from_string(inv.format);
        emit_results(stats, format, os);
        return 0;
    }
    if (inv.subcommand == "equiv") {
        const EquivalenceReport report = equivalence_check(inv.config);
        write_equivalence_report(report, os);
        return report.pass ? 0 : 2;
    }
    if (inv.subcommand == "trajectory") {
        write_trajectory_csv(inv.config, inv.backend, os);
        return 0;
    }
    err << "no subcommand selected\n";
    return 1;
}

}  // namespace

CliInvocation parse(const std::vector<std::string>& args) {
    AppState state;
    CLI::App app{"ana"};
    build_app(app, state);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ana");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    finalize(app, state);
    return state.inv;
}

int execute(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    try {
        inv.config.validate();
        if (inv.out_path.empty()) {
            const int code = execute_checked(inv, out, err);
            out.flush();
            return code;
        }
        std::ofstream file(inv.out_path);
        if (!file) {
            err << "cannot open output file: " << inv.out_path << '\n';
            return 4;
        }
        const int code = execute_checked(inv, file, err);
        file.flush();
        if (!file) {
            err << "write failed: " << inv.out_path << '\n';
            return 4;
        }
        return code;
    } catch (const UnknownFunctionError& e) {
        err << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 1;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    AppState state;
    CLI::App app{"ana"};
    build_app(app, state);
    try {
        app.parse(argc, argv);
        finalize(app, state);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    return execute(state.inv, out, err);
}

}  // namespace ana::cli
