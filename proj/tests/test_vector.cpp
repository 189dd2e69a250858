#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "ana/vector.hpp"

using namespace ana;

namespace {

RunConfig config_for(const std::string& function, int dim, int agents, int iterations,
                     std::uint64_t seed, ConditionScope scope = ConditionScope::element) {
    RunConfig config;
    config.function_id = function;
    config.dimension = dim;
    config.agents = agents;
    config.iterations = iterations;
    config.seed = seed;
    config.scope = scope;
    return config;
}

bool bits_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// A state several iterations into a run, so branches A, B and C all occur.
RunState mid_run_state(const RunConfig& config, int iterations, RngStream& stream) {
    const FunctionSpec spec = lookup(config.function_id);
    RunState state = init_state(config, spec, stream);
    for (int i = 0; i < iterations; ++i) step(state, config, spec, stream);
    state.best = find_best(state.fitness, state.population);
    return state;
}

PopulationMatrix random_walk(int dim, int agents, std::uint64_t seed) {
    PopulationMatrix r(dim, agents);
    RngStream stream(seed);
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] = stream.uniform(-1.0, 1.0);
    return r;
}

}  // namespace

TEST_CASE("masks partition every element, element scope") {
    const RunConfig config = config_for("sphere", 10, 30, 0, 5);
    RngStream stream(config.seed);
    const RunState state = mid_run_state(config, 20, stream);

    const BranchMasks masks =
        build_masks(state.population, state.best, state.previous, ConditionScope::element);
    for (int a = 0; a < 30; ++a) {
        for (int d = 0; d < 10; ++d) {
            const int set = masks.a.at(d, a) + masks.b.at(d, a) + masks.c.at(d, a);
            CHECK(set == 1);
        }
    }
}

TEST_CASE("masks partition every element, agent scope") {
    const RunConfig config = config_for("rastrigin", 6, 14, 0, 8, ConditionScope::agent);
    RngStream stream(config.seed);
    const RunState state = mid_run_state(config, 15, stream);

    const BranchMasks masks =
        build_masks(state.population, state.best, state.previous, ConditionScope::agent);
    for (int a = 0; a < 14; ++a) {
        // agent scope: a column is uniformly in one branch
        const std::uint8_t in_a = masks.a.at(0, a);
        const std::uint8_t in_b = masks.b.at(0, a);
        const std::uint8_t in_c = masks.c.at(0, a);
        CHECK(in_a + in_b + in_c == 1);
        for (int d = 1; d < 6; ++d) {
            CHECK(masks.a.at(d, a) == in_a);
            CHECK(masks.b.at(d, a) == in_b);
            CHECK(masks.c.at(d, a) == in_c);
        }
    }
}

TEST_CASE("immediately after init everything is branch B except the best column") {
    const RunConfig config = config_for("sphere", 10, 30, 0, 123);
    const FunctionSpec spec = lookup(config.function_id);
    RngStream stream(config.seed);
    const RunState state = init_state(config, spec, stream);

    for (ConditionScope scope : {ConditionScope::element, ConditionScope::agent}) {
        const BranchMasks masks = build_masks(state.population, state.best, state.previous, scope);
        for (int a = 0; a < 30; ++a) {
            for (int d = 0; d < 10; ++d) {
                if (state.population.at(d, a) ==
                    state.best.position[static_cast<std::size_t>(d)]) {
                    // covers the best agent's own column (either scope)
                    if (a == state.best.index) CHECK(masks.a.at(d, a) == 1);
                } else {
                    CHECK(masks.b.at(d, a) == 1);
                }
                CHECK(masks.c.at(d, a) == 0);
            }
        }
        // the best agent's column is wholly branch A in both scopes
        for (int d = 0; d < 10; ++d) CHECK(masks.a.at(d, state.best.index) == 1);
    }
}

TEST_CASE("rate of change: zero random walk in branch A gives zero delta") {
    const RunConfig config = config_for("sphere", 4, 5, 0, 7);
    RngStream stream(config.seed);
    RunState state = mid_run_state(config, 5, stream);

    // force every element into branch A by making the whole population a
    // copy of the best column
    for (int a = 0; a < 5; ++a)
        for (int d = 0; d < 4; ++d)
            state.population.at(d, a) = state.best.position[static_cast<std::size_t>(d)];
    state.fitness = evaluate_population(lookup("sphere"), state.population);
    state.best = find_best(state.fitness, state.population);

    const BranchMasks masks =
        build_masks(state.population, state.best, state.previous, ConditionScope::element);
    const PopulationMatrix zero_r(4, 5, 0.0);
    const PopulationMatrix delta = rate_of_change(state.population, state.previous, state.best,
                                                  state.fitness, state.previous_fitness, zero_r,
                                                  masks);
    for (int a = 0; a < 5; ++a)
        for (int d = 0; d < 4; ++d) CHECK(delta.at(d, a) == 0.0);
}

TEST_CASE("rate of change: unit random walk copies the best column through branch A") {
    const RunConfig config = config_for("sphere", 3, 4, 0, 11);
    RngStream stream(config.seed);
    RunState state = mid_run_state(config, 3, stream);

    const PopulationMatrix ones(3, 4, 1.0);
    const BranchMasks masks =
        build_masks(state.population, state.best, state.previous, ConditionScope::element);
    const PopulationMatrix delta = rate_of_change(state.population, state.previous, state.best,
                                                  state.fitness, state.previous_fitness, ones,
                                                  masks);
    // the best agent's own column satisfies branch A, so delta = 1 * x
    const int b = state.best.index;
    for (int d = 0; d < 3; ++d) CHECK(delta.at(d, b) == state.population.at(d, b));
}

TEST_CASE("rate of change matches the scalar branch dispatch elementwise") {
    // The scalar backend's per-element branch logic is the oracle.
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const RunConfig config = config_for("rastrigin", 8, 12, 0, seed);
        RngStream stream(config.seed);
        const RunState state = mid_run_state(config, 12, stream);
        const PopulationMatrix r = random_walk(8, 12, seed + 1000);

        const BranchMasks masks =
            build_masks(state.population, state.best, state.previous, ConditionScope::element);
        const PopulationMatrix delta =
            rate_of_change(state.population, state.previous, state.best, state.fitness,
                           state.previous_fitness, r, masks);

        for (int a = 0; a < 12; ++a) {
            for (int d = 0; d < 8; ++d) {
                const double x = state.population.at(d, a);
                const double x_prev = state.previous.at(d, a);
                const double best_d = state.best.position[static_cast<std::size_t>(d)];
                const double rv = r.at(d, a);
                double expected;
                if (x == best_d) {
                    expected = delta_best(rv, x);
                } else if (x == x_prev) {
                    expected = delta_previous(rv, best_d, x);
                } else {
                    const double t = tendency(best_d, x, state.best.fitness,
                                              state.fitness[static_cast<std::size_t>(a)]);
                    const double t_prev =
                        tendency(best_d, x_prev, state.best.fitness,
                                 state.previous_fitness[static_cast<std::size_t>(a)]);
                    expected = delta_general(deposition_weight(rv, t, t_prev), best_d, x);
                }
                CHECK(bits_equal(delta.at(d, a), expected));
            }
        }
    }
}

TEST_CASE("degenerate previous state exercises the ratio guard without NaN") {
    // previous column equal to the best with equal fitness drives T_prev to
    // zero; the guard must keep every delta finite.
    const RunConfig config = config_for("sphere", 3, 3, 0, 19);
    RngStream stream(config.seed);
    RunState state = mid_run_state(config, 4, stream);

    const int victim = (state.best.index + 1) % 3;
    for (int d = 0; d < 3; ++d)
        state.previous.at(d, victim) = state.best.position[static_cast<std::size_t>(d)];
    state.previous_fitness[static_cast<std::size_t>(victim)] = state.best.fitness;

    const PopulationMatrix r = random_walk(3, 3, 99);
    const BranchMasks masks =
        build_masks(state.population, state.best, state.previous, ConditionScope::element);
    const PopulationMatrix delta = rate_of_change(state.population, state.previous, state.best,
                                                  state.fitness, state.previous_fitness, r, masks);
    for (int a = 0; a < 3; ++a)
        for (int d = 0; d < 3; ++d) CHECK(std::isfinite(delta.at(d, a)));

    // guard semantics: with T_prev = 0 the weight collapses to r
    for (int d = 0; d < 3; ++d) {
        const double x = state.population.at(d, victim);
        const double best_d = state.best.position[static_cast<std::size_t>(d)];
        if (x != best_d && x != state.previous.at(d, victim)) {
            const double expected = delta_general(r.at(d, victim), best_d, x);
            CHECK(bits_equal(delta.at(d, victim), expected));
        }
    }
}

TEST_CASE("step_vector is bit-identical to step across random configurations") {
    // The module's defining property, exercised on mixed shapes, functions,
    // seeds and both condition scopes.
    const struct {
        const char* function;
        int dim;
        int agents;
    } shapes[] = {
        {"sphere", 10, 30}, {"rosenbrock", 5, 7},   {"abs_plus_prod", 3, 16},
        {"ackley", 12, 4},  {"cumsum_sq", 2, 25},   {"griewank", 8, 8},
        {"max_abs", 6, 10}, {"rastrigin", 4, 9},    {"step", 9, 5},
    };
    for (const auto& shape : shapes) {
        for (ConditionScope scope : {ConditionScope::element, ConditionScope::agent}) {
            RunConfig config = config_for(shape.function, shape.dim, shape.agents, 0, 71, scope);
            const FunctionSpec spec = lookup(config.function_id);
            RngStream scalar_stream(config.seed);
            RngStream vector_stream(config.seed);
            RunState scalar_state = init_state(config, spec, scalar_stream);
            RunState vector_state = init_state(config, spec, vector_stream);

            for (int t = 0; t < 30; ++t) {
                step(scalar_state, config, spec, scalar_stream);
                step_vector(vector_state, config, spec, vector_stream);
            }
            CHECK(scalar_stream.draws() == vector_stream.draws());
            CHECK(scalar_state.best.index == vector_state.best.index);
            bool all_equal = true;
            for (int a = 0; a < shape.agents; ++a) {
                all_equal &= bits_equal(scalar_state.fitness[static_cast<std::size_t>(a)],
                                        vector_state.fitness[static_cast<std::size_t>(a)]);
                all_equal &=
                    bits_equal(scalar_state.previous_fitness[static_cast<std::size_t>(a)],
                               vector_state.previous_fitness[static_cast<std::size_t>(a)]);
                for (int d = 0; d < shape.dim; ++d) {
                    all_equal &= bits_equal(scalar_state.population.at(d, a),
                                            vector_state.population.at(d, a));
                    all_equal &= bits_equal(scalar_state.previous.at(d, a),
                                            vector_state.previous.at(d, a));
                }
            }
            CHECK(all_equal);
        }
    }
}

TEST_CASE("an acceptance row of rejections leaves the state untouched") {
    // A population already sitting on the optimum cannot strictly improve:
    // every element is branch A with delta = r * 0, ties are rejected.
    const RunConfig config = config_for("sphere", 5, 6, 0, 2);
    const FunctionSpec spec = lookup("sphere");
    RngStream stream(config.seed);
    RunState state = init_state(config, spec, stream);
    for (std::size_t i = 0; i < state.population.size(); ++i) state.population.data()[i] = 0.0;
    state.previous = state.population;
    state.fitness = evaluate_population(spec, state.population);
    state.previous_fitness = state.fitness;
    state.best = find_best(state.fitness, state.population);

    RunState before = state;
    step_vector(state, config, spec, stream);
    CHECK(state.iteration == before.iteration + 1);
    for (std::size_t i = 0; i < state.population.size(); ++i) {
        CHECK(bits_equal(state.population.data()[i], before.population.data()[i]));
        CHECK(bits_equal(state.previous.data()[i], before.previous.data()[i]));
    }
    for (int a = 0; a < 6; ++a) {
        CHECK(state.fitness[static_cast<std::size_t>(a)] ==
              before.fitness[static_cast<std::size_t>(a)]);
    }
}

TEST_CASE("run_vector matches run on the full default workload") {
    const RunConfig config = config_for("sphere", 10, 30, 500, 42);
    const RunResult scalar_result = run(config);
    const RunResult vector_result = run_vector(config);
    CHECK(vector_result.backend == Backend::vector);
    REQUIRE(vector_result.trace.size() == scalar_result.trace.size());
    for (std::size_t i = 0; i < scalar_result.trace.size(); ++i) {
        CHECK(bits_equal(scalar_result.trace[i].best_fitness,
                         vector_result.trace[i].best_fitness));
        CHECK(scalar_result.trace[i].best_index == vector_result.trace[i].best_index);
    }
}

TEST_CASE("run_vector with zero iterations gives an empty trace") {
    const RunConfig config = config_for("step", 4, 4, 0, 6);
    const RunResult result = run_vector(config);
    CHECK(result.trace.empty());
    CHECK(result.elapsed_ns > 0);
}

TEST_CASE("vector backend budget: exactly D*N draws per iteration") {
    const RunConfig config = config_for("sphere", 9, 13, 8, 4);
    const FunctionSpec spec = lookup(config.function_id);
    RngStream stream(config.seed);
    RunState state = init_state(config, spec, stream);
    const std::uint64_t per_iteration = 9ULL * 13ULL;
    for (int t = 1; t <= config.iterations; ++t) {
        step_vector(state, config, spec, stream);
        CHECK(stream.draws() == per_iteration * static_cast<std::uint64_t>(t + 1));
    }
}

TEST_CASE("shape mismatches are rejected") {
    const PopulationMatrix pop(3, 4);
    const PopulationMatrix wrong(2, 4);
    BestAnt best;
    best.position = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(build_masks(pop, best, wrong, ConditionScope::element),
                    std::invalid_argument);
    BestAnt short_best;
    short_best.position = {0.0};
    CHECK_THROWS_AS(build_masks(pop, short_best, pop, ConditionScope::element),
                    std::invalid_argument);
}
