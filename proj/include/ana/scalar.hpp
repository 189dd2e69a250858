#pragma once

#include <functional>

#include "ana/functions.hpp"
#include "ana/results.hpp"
#include "ana/run_state.hpp"
#include "ana/update_rules.hpp"

namespace ana {

/// Called after every completed iteration; used for trajectory capture.
using IterationObserver = std::function<void(const RunState&)>;

/// Initialize a run: random population, previous = exact copy, cached
/// fitness rows equal, best selected, iteration 0. Consumes D*N draws.
RunState init_state(const RunConfig& config, const FunctionSpec& spec, RngStream& stream);

/// One iteration, executed agent by agent and element by element. This is
/// the reference schedule the vectorized backend must match bit for bit:
///   1. best from cached fitness (lowest index on ties)
///   2. one draw on [-1, 1) per element, agent-major dimension-minor
///   3. branch per element/agent: A best, B previous, else C
///   4. candidate = clamp(position + delta)
///   5. candidate fitness per agent, ascending
///   6. strict greedy acceptance per agent
/// Consumes exactly D*N draws.
void step(RunState& state, const RunConfig& config, const FunctionSpec& spec, RngStream& stream);

/// Full run from config.seed: init_state then `iterations` steps, recording
/// the best-fitness trace and elapsed wall time.
RunResult run(const RunConfig& config, const IterationObserver& observer = {});

}  // namespace ana
