#include "ana/scalar.hpp"

#include <algorithm>
#include <chrono>

namespace ana {
namespace {

enum class Branch : unsigned char { a, b, c };

// One element's rate of change. The scalar fitness difference is broadcast
// across the agent's dimensions inside branch C.
inline double element_delta(Branch branch, double r, double x, double x_prev, double best_d,
                            double best_fit, double fit, double prev_fit) {
    switch (branch) {
        case Branch::a:
            return delta_best(r, x);
        case Branch::b:
            return delta_previous(r, best_d, x);
        case Branch::c: {
            const double t = tendency(best_d, x, best_fit, fit);
            const double t_prev = tendency(best_d, x_prev, best_fit, prev_fit);
            const double dw = deposition_weight(r, t, t_prev);
            return delta_general(dw, best_d, x);
        }
    }
    return 0.0;  // unreachable
}

bool column_equals_best(const PopulationMatrix& population, int a,
                        const std::vector<double>& best_position) {
    for (int d = 0; d < population.dimension(); ++d) {
        if (population.at(d, a) != best_position[static_cast<std::size_t>(d)]) return false;
    }
    return true;
}

bool column_equals_previous(const PopulationMatrix& population, const PopulationMatrix& previous,
                            int a) {
    for (int d = 0; d < population.dimension(); ++d) {
        if (population.at(d, a) != previous.at(d, a)) return false;
    }
    return true;
}

}  // namespace

RunState init_state(const RunConfig& config, const FunctionSpec& spec, RngStream& stream) {
    RunState state;
    state.population = init_population(config, stream);
    state.previous = state.population;
    state.fitness.resize(static_cast<std::size_t>(config.agents));
    for (int a = 0; a < config.agents; ++a)
        state.fitness[static_cast<std::size_t>(a)] = evaluate(spec, state.population.column(a));
    state.previous_fitness = state.fitness;
    state.best = find_best(state.fitness, state.population);
    state.iteration = 0;
    return state;
}

void step(RunState& state, const RunConfig& config, const FunctionSpec& spec, RngStream& stream) {
    const int dim = state.population.dimension();
    const int n = state.population.agents();

    state.best = find_best(state.fitness, state.population);
    const BestAnt& best = state.best;

    // Candidate positions, one draw per element in the canonical order.
    PopulationMatrix candidate(dim, n);
    for (int a = 0; a < n; ++a) {
        Branch agent_branch = Branch::c;
        if (config.scope == ConditionScope::agent) {
            if (column_equals_best(state.population, a, best.position))
                agent_branch = Branch::a;
            else if (column_equals_previous(state.population, state.previous, a))
                agent_branch = Branch::b;
        }
        for (int d = 0; d < dim; ++d) {
            const double r = stream.uniform(-1.0, 1.0);
            const double x = state.population.at(d, a);
            const double x_prev = state.previous.at(d, a);
            const double best_d = best.position[static_cast<std::size_t>(d)];

            Branch branch = agent_branch;
            if (config.scope == ConditionScope::element) {
                if (x == best_d)
                    branch = Branch::a;
                else if (x == x_prev)
                    branch = Branch::b;
                else
                    branch = Branch::c;
            }

            const double delta =
                element_delta(branch, r, x, x_prev, best_d, best.fitness,
                              state.fitness[static_cast<std::size_t>(a)],
                              state.previous_fitness[static_cast<std::size_t>(a)]);
            candidate.at(d, a) = config.bounds.clamp(x + delta);
        }
    }

    // Strict greedy acceptance, ascending agents; previous receives the
    // pre-move position.
    for (int a = 0; a < n; ++a) {
        const double candidate_fitness = evaluate(spec, candidate.column(a));
        if (candidate_fitness < state.fitness[static_cast<std::size_t>(a)]) {
            const auto old_column = state.population.column(a);
            std::copy(old_column.begin(), old_column.end(), state.previous.column(a).begin());
            state.previous_fitness[static_cast<std::size_t>(a)] =
                state.fitness[static_cast<std::size_t>(a)];
            const auto new_column = candidate.column(a);
            std::copy(new_column.begin(), new_column.end(), state.population.column(a).begin());
            state.fitness[static_cast<std::size_t>(a)] = candidate_fitness;
        }
    }

    state.best = find_best(state.fitness, state.population);
    ++state.iteration;
}

RunResult run(const RunConfig& config, const IterationObserver& observer) {
    config.validate();
    const FunctionSpec spec = lookup(config.function_id);

    RunResult result;
    result.backend = Backend::scalar;
    result.config = config;
    result.trace.reserve(static_cast<std::size_t>(config.iterations));

    const auto start = std::chrono::steady_clock::now();
    RngStream stream(config.seed);
    RunState state = init_state(config, spec, stream);
    for (int t = 0; t < config.iterations; ++t) {
        step(state, config, spec, stream);
        result.trace.push_back({state.iteration, state.best.fitness, state.best.index});
        if (observer) observer(state);
    }
    const auto stop = std::chrono::steady_clock::now();

    result.final_best = state.best.fitness;
    result.elapsed_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    return result;
}

}  // namespace ana
