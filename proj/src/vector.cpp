#include "ana/vector.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace ana {
namespace {

void check_shapes(const PopulationMatrix& population, const BestAnt& best,
                  const PopulationMatrix& previous) {
    if (!population.same_shape(previous))
        throw std::invalid_argument("shape mismatch: population vs previous");
    if (static_cast<int>(best.position.size()) != population.dimension())
        throw std::invalid_argument("shape mismatch: best position vs population");
}

void ensure_shape(PopulationMatrix& m, int dim, int n) {
    if (m.dimension() != dim || m.agents() != n) m = PopulationMatrix(dim, n);
}

void ensure_shape(MaskMatrix& m, int dim, int n) {
    if (m.dimension() != dim || m.agents() != n) m = MaskMatrix(dim, n);
}

// Reused across iterations of one run so the hot loop does not touch the
// allocator.
struct StepWorkspace {
    PopulationMatrix r;
    PopulationMatrix delta;
    PopulationMatrix candidate;
    PopulationMatrix best_broadcast;
    PopulationMatrix fitness_broadcast;
    PopulationMatrix previous_fitness_broadcast;
    BranchMasks masks;
    // Word-wide copies of masks a and b (c is the remainder); the blend in
    // the rate-of-change pass needs lanes as wide as the doubles it selects.
    std::vector<std::uint64_t> wide_a;
    std::vector<std::uint64_t> wide_b;
    FitnessVector candidate_fitness;

    void ensure(int dim, int n) {
        ensure_shape(r, dim, n);
        ensure_shape(delta, dim, n);
        ensure_shape(candidate, dim, n);
        ensure_shape(best_broadcast, dim, n);
        ensure_shape(fitness_broadcast, dim, n);
        ensure_shape(previous_fitness_broadcast, dim, n);
        ensure_shape(masks.a, dim, n);
        ensure_shape(masks.b, dim, n);
        ensure_shape(masks.c, dim, n);
        wide_a.resize(static_cast<std::size_t>(dim) * n);
        wide_b.resize(static_cast<std::size_t>(dim) * n);
    }
};

// Best column repeated across every agent; turns the per-element branch
// tests and branch B into flat, branch-free passes.
void broadcast_best_into(PopulationMatrix& out, const BestAnt& best) {
    const int dim = out.dimension();
    for (int a = 0; a < out.agents(); ++a)
        std::copy_n(best.position.data(), dim, out.column(a).data());
}

// Per-agent fitness repeated down each column, so the branch C pass can run
// flat over the whole matrix.
void broadcast_row_into(PopulationMatrix& out, const FitnessVector& row) {
    const int dim = out.dimension();
    for (int a = 0; a < out.agents(); ++a)
        std::fill_n(out.column(a).data(), dim, row[static_cast<std::size_t>(a)]);
}

// Flat kernels behind the masked matrix operations. Raw restrict parameters
// rather than locals: the vectorizer only trusts restrict on function
// parameters, and these passes must not grow runtime alias checks.

void element_masks_pass(std::size_t total, const double* __restrict pop,
                        const double* __restrict bb, const double* __restrict prev,
                        std::uint64_t* __restrict wa, std::uint64_t* __restrict wb) {
    for (std::size_t i = 0; i < total; ++i) {
        const std::uint64_t in_a = pop[i] == bb[i];
        const std::uint64_t in_b = static_cast<std::uint64_t>(pop[i] == prev[i]) & (in_a ^ 1u);
        wa[i] = in_a;
        wb[i] = in_b;
    }
}

void narrow_masks_pass(std::size_t total, const std::uint64_t* __restrict wa,
                       const std::uint64_t* __restrict wb, std::uint8_t* __restrict ma,
                       std::uint8_t* __restrict mb, std::uint8_t* __restrict mc) {
    for (std::size_t i = 0; i < total; ++i) {
        ma[i] = static_cast<std::uint8_t>(wa[i]);
        mb[i] = static_cast<std::uint8_t>(wb[i]);
        mc[i] = static_cast<std::uint8_t>((wa[i] | wb[i]) ^ 1u);
    }
}

void build_masks_into(BranchMasks& masks, std::uint64_t* wa, std::uint64_t* wb,
                      const PopulationMatrix& population,
                      const PopulationMatrix& best_broadcast, const PopulationMatrix& previous,
                      ConditionScope scope) {
    const int dim = population.dimension();
    const int n = population.agents();
    const double* pop = population.data();
    const double* bb = best_broadcast.data();
    const double* prev = previous.data();
    std::uint8_t* ma = masks.a.data();
    std::uint8_t* mb = masks.b.data();
    std::uint8_t* mc = masks.c.data();

    if (scope == ConditionScope::element) {
        element_masks_pass(population.size(), pop, bb, prev, wa, wb);
        narrow_masks_pass(population.size(), wa, wb, ma, mb, mc);
        return;
    }

    // Column-wise all-equal reductions broadcast down each column.
    for (int agent = 0; agent < n; ++agent) {
        const std::size_t base = static_cast<std::size_t>(agent) * dim;
        bool all_best = true;
        bool all_prev = true;
        for (int d = 0; d < dim; ++d) {
            all_best &= pop[base + d] == bb[base + d];
            all_prev &= pop[base + d] == prev[base + d];
        }
        const std::uint8_t in_a = all_best;
        const std::uint8_t in_b = !all_best && all_prev;
        const std::uint8_t in_c = !in_a && !in_b;
        std::fill_n(ma + base, dim, in_a);
        std::fill_n(mb + base, dim, in_b);
        std::fill_n(mc + base, dim, in_c);
        std::fill_n(wa + base, dim, static_cast<std::uint64_t>(in_a));
        std::fill_n(wb + base, dim, static_cast<std::uint64_t>(in_b));
    }
}

// One flat branch-free pass: every branch is computed per element and the
// masks select the survivor, the whole-matrix analogue of the scalar
// dispatch. Unselected lanes may compute garbage (even 0/0 inside the
// deposition ratio); the final blends discard it. Keeping the body free of
// control flow lets the compiler run the square roots and divisions several
// lanes wide, which IEEE rounding keeps bit-identical to the scalar route.
void delta_pass(std::size_t total, double best_fit, const double* __restrict pop,
                const double* __restrict prev, const double* __restrict bb,
                const double* __restrict fitb, const double* __restrict pfitb,
                const double* __restrict rw, const std::uint64_t* __restrict wa,
                const std::uint64_t* __restrict wb, double* __restrict out) {
    for (std::size_t i = 0; i < total; ++i) {
        const double from_a = delta_best(rw[i], pop[i]);
        const double from_b = delta_previous(rw[i], bb[i], pop[i]);
        const double t = tendency(bb[i], pop[i], best_fit, fitb[i]);
        const double t_prev = tendency(bb[i], prev[i], best_fit, pfitb[i]);
        const double dw = deposition_weight(rw[i], t, t_prev);
        const double from_c = delta_general(dw, bb[i], pop[i]);
        out[i] = wa[i] ? from_a : (wb[i] ? from_b : from_c);
    }
}

void rate_of_change_into(PopulationMatrix& delta, const PopulationMatrix& population,
                         const PopulationMatrix& previous, const BestAnt& best,
                         const PopulationMatrix& best_broadcast,
                         const PopulationMatrix& fitness_broadcast,
                         const PopulationMatrix& previous_fitness_broadcast,
                         const PopulationMatrix& r, const std::uint64_t* wa,
                         const std::uint64_t* wb) {
    delta_pass(population.size(), best.fitness, population.data(), previous.data(),
               best_broadcast.data(), fitness_broadcast.data(),
               previous_fitness_broadcast.data(), r.data(), wa, wb, delta.data());
}

// candidate = population + delta, clamped; one fused elementwise pass.
void candidate_pass(std::size_t total, Bounds bounds, const double* __restrict pop,
                    const double* __restrict delta, double* __restrict out) {
    for (std::size_t i = 0; i < total; ++i) out[i] = bounds.clamp(pop[i] + delta[i]);
}

void step_vector_with(RunState& state, const RunConfig& config, const FunctionSpec& spec,
                      RngStream& stream, StepWorkspace& ws) {
    const int dim = state.population.dimension();
    const int n = state.population.agents();
    ws.ensure(dim, n);

    state.best = find_best(state.fitness, state.population);

    // Whole-matrix random walk. The flat storage order is agent-major,
    // dimension-minor, so one sequential fill consumes the stream exactly
    // like the scalar backend's element loop.
    double* r_data = ws.r.data();
    const std::size_t total = ws.r.size();
    for (std::size_t i = 0; i < total; ++i) r_data[i] = stream.uniform(-1.0, 1.0);

    broadcast_best_into(ws.best_broadcast, state.best);
    broadcast_row_into(ws.fitness_broadcast, state.fitness);
    broadcast_row_into(ws.previous_fitness_broadcast, state.previous_fitness);
    build_masks_into(ws.masks, ws.wide_a.data(), ws.wide_b.data(), state.population,
                     ws.best_broadcast, state.previous, config.scope);
    rate_of_change_into(ws.delta, state.population, state.previous, state.best, ws.best_broadcast,
                        ws.fitness_broadcast, ws.previous_fitness_broadcast, ws.r,
                        ws.wide_a.data(), ws.wide_b.data());

    candidate_pass(total, config.bounds, state.population.data(), ws.delta.data(),
                   ws.candidate.data());

    evaluate_population(spec, ws.candidate, ws.candidate_fitness);

    // Per-agent acceptance row selecting whole columns.
    for (int a = 0; a < n; ++a) {
        if (ws.candidate_fitness[static_cast<std::size_t>(a)] <
            state.fitness[static_cast<std::size_t>(a)]) {
            const auto old_column = state.population.column(a);
            std::copy(old_column.begin(), old_column.end(), state.previous.column(a).begin());
            state.previous_fitness[static_cast<std::size_t>(a)] =
                state.fitness[static_cast<std::size_t>(a)];
            const auto new_column = ws.candidate.column(a);
            std::copy(new_column.begin(), new_column.end(), state.population.column(a).begin());
            state.fitness[static_cast<std::size_t>(a)] =
                ws.candidate_fitness[static_cast<std::size_t>(a)];
        }
    }

    state.best = find_best(state.fitness, state.population);
    ++state.iteration;
}

}  // namespace

BranchMasks build_masks(const PopulationMatrix& population, const BestAnt& best,
                        const PopulationMatrix& previous, ConditionScope scope) {
    check_shapes(population, best, previous);
    const std::size_t total = population.size();
    BranchMasks masks{MaskMatrix(population.dimension(), population.agents()),
                      MaskMatrix(population.dimension(), population.agents()),
                      MaskMatrix(population.dimension(), population.agents())};
    PopulationMatrix best_broadcast(population.dimension(), population.agents());
    broadcast_best_into(best_broadcast, best);
    std::vector<std::uint64_t> wide_a(total);
    std::vector<std::uint64_t> wide_b(total);
    build_masks_into(masks, wide_a.data(), wide_b.data(), population, best_broadcast, previous,
                     scope);
    return masks;
}

PopulationMatrix rate_of_change(const PopulationMatrix& population,
                                const PopulationMatrix& previous, const BestAnt& best,
                                const FitnessVector& fitness,
                                const FitnessVector& previous_fitness, const PopulationMatrix& r,
                                const BranchMasks& masks) {
    check_shapes(population, best, previous);
    if (!population.same_shape(r)) throw std::invalid_argument("shape mismatch: random walk");
    if (masks.a.size() != population.size()) throw std::invalid_argument("shape mismatch: masks");

    const int dim = population.dimension();
    const int n = population.agents();
    const std::size_t total = population.size();
    PopulationMatrix best_broadcast(dim, n);
    broadcast_best_into(best_broadcast, best);
    PopulationMatrix fitness_broadcast(dim, n);
    broadcast_row_into(fitness_broadcast, fitness);
    PopulationMatrix previous_fitness_broadcast(dim, n);
    broadcast_row_into(previous_fitness_broadcast, previous_fitness);
    std::vector<std::uint64_t> wide_a(total);
    std::vector<std::uint64_t> wide_b(total);
    for (std::size_t i = 0; i < total; ++i) {
        wide_a[i] = masks.a.data()[i];
        wide_b[i] = masks.b.data()[i];
    }
    PopulationMatrix delta(dim, n);
    rate_of_change_into(delta, population, previous, best, best_broadcast, fitness_broadcast,
                        previous_fitness_broadcast, r, wide_a.data(), wide_b.data());
    return delta;
}

void step_vector(RunState& state, const RunConfig& config, const FunctionSpec& spec,
                 RngStream& stream) {
    StepWorkspace ws;
    step_vector_with(state, config, spec, stream, ws);
}

RunResult run_vector(const RunConfig& config, const IterationObserver& observer) {
    config.validate();
    const FunctionSpec spec = lookup(config.function_id);

    RunResult result;
    result.backend = Backend::vector;
    result.config = config;
    result.trace.reserve(static_cast<std::size_t>(config.iterations));

    const auto start = std::chrono::steady_clock::now();
    RngStream stream(config.seed);
    RunState state = init_state(config, spec, stream);
    StepWorkspace ws;
    for (int t = 0; t < config.iterations; ++t) {
        step_vector_with(state, config, spec, stream, ws);
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
