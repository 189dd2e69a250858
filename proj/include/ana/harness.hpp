#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "ana/results.hpp"
#include "ana/scalar.hpp"
#include "ana/vector.hpp"

namespace ana {

/// Outcome of the lockstep scalar-vs-vector state comparison. Iteration 0
/// means the initial states already differ; iteration t > 0 means the first
/// difference appeared after iteration t.
struct EquivalenceReport {
    bool pass = true;
    int first_divergence_iteration = -1;
    int divergent_dimension = -1;
    int divergent_agent = -1;
    std::string component;  // which piece of state diverged first
};

using StepFn =
    std::function<void(RunState&, const RunConfig&, const FunctionSpec&, RngStream&)>;

/// Run `runs` independent runs with seeds config.seed + 0 ... + runs-1 and
/// aggregate the final best values and timings.
TrialStats run_trials(const RunConfig& config, Backend backend, int runs);

/// Execute both backends from the same seed and compare the full state
/// after initialization and after every iteration, bit for bit.
EquivalenceReport equivalence_check(const RunConfig& config);

/// Same comparison between two arbitrary steppers; used for fault-injection
/// fixtures and the symmetry property.
EquivalenceReport equivalence_check(const RunConfig& config, const StepFn& reference,
                                    const StepFn& candidate);

/// Time both backends (median of `reps` after discarding `warmups`) and
/// report the speedup. Runs equivalence_check first and records the result.
ComparisonReport compare(const RunConfig& config, int warmups, int reps);

enum class EmitFormat { csv, json };
EmitFormat emit_format_from_string(const std::string& name);

/// Deterministic serialization: fixed column order, floats at 17
/// significant digits, trailing newline.
void emit_results(std::span<const TrialStats> results, EmitFormat format, std::ostream& out);

void write_trace_csv(const RunResult& result, std::ostream& out);
void write_compare_json(const ComparisonReport& report, std::ostream& out);
void write_equivalence_report(const EquivalenceReport& report, std::ostream& out);

/// Run the chosen backend and stream per-iteration agent positions:
/// iteration,agent,d0,...,d{D-1}. One row per agent per iteration.
void write_trajectory_csv(const RunConfig& config, Backend backend, std::ostream& out);

/// 17-significant-digit float formatting used by every emitter.
std::string format_double(double value);

}  // namespace ana
