#pragma once

#include "ana/population.hpp"

namespace ana {

/// Mutable loop state shared by both backends.
///
/// Fitness values are cached and stay coherent with the matrices at every
/// iteration boundary: re-evaluating population or previous columns must
/// reproduce them exactly. best always reflects the current fitness row.
struct RunState {
    PopulationMatrix population;
    PopulationMatrix previous;
    FitnessVector fitness;
    FitnessVector previous_fitness;
    BestAnt best;
    int iteration = 0;
};

}  // namespace ana
