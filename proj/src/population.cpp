#include "ana/population.hpp"

#include <stdexcept>

namespace ana {

BestAnt find_best(const FitnessVector& fitness, const PopulationMatrix& population) {
    if (fitness.empty())
        throw std::invalid_argument("find_best: empty fitness vector");

    // Strict < keeps the lowest index on ties.
    int best = 0;
    for (int a = 1; a < static_cast<int>(fitness.size()); ++a) {
        if (fitness[static_cast<std::size_t>(a)] < fitness[static_cast<std::size_t>(best)]) best = a;
    }

    BestAnt result;
    result.index = best;
    result.fitness = fitness[static_cast<std::size_t>(best)];
    const auto column = population.column(best);
    result.position.assign(column.begin(), column.end());
    return result;
}

PopulationMatrix init_population(const RunConfig& config, RngStream& stream) {
    config.validate();
    PopulationMatrix population(config.dimension, config.agents);
    // Agent-major, dimension-minor: element (d, a) receives draw a*D + d.
    for (int a = 0; a < config.agents; ++a) {
        for (int d = 0; d < config.dimension; ++d) {
            population.at(d, a) = stream.uniform(config.bounds.lower, config.bounds.upper);
        }
    }
    return population;
}

void clamp_to_bounds(PopulationMatrix& population, const Bounds& bounds) {
    double* data = population.data();
    const std::size_t n = population.size();
    for (std::size_t i = 0; i < n; ++i) data[i] = bounds.clamp(data[i]);
}

}  // namespace ana
