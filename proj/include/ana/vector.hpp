#pragma once

#include <cstdint>
#include <vector>

#include "ana/scalar.hpp"

namespace ana {

/// D x N boolean grid, one per update branch.
class MaskMatrix {
public:
    MaskMatrix() = default;
    MaskMatrix(int dimension, int agents)
        : dim_(dimension),
          agents_(agents),
          data_(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(agents), 0) {}

    std::uint8_t& at(int d, int a) { return data_[index(d, a)]; }
    std::uint8_t at(int d, int a) const { return data_[index(d, a)]; }

    int dimension() const { return dim_; }
    int agents() const { return agents_; }

    std::uint8_t* data() { return data_.data(); }
    const std::uint8_t* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

private:
    std::size_t index(int d, int a) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(d);
    }

    int dim_ = 0;
    int agents_ = 0;
    std::vector<std::uint8_t> data_;
};

/// The three branch masks; a, b, c partition every element (exactly one set
/// per element, precedence a over b over c).
struct BranchMasks {
    MaskMatrix a;
    MaskMatrix b;
    MaskMatrix c;
};

/// Build the branch masks for the current state. Element scope compares
/// each element against the best column and the previous matrix; agent
/// scope reduces each column to a single all-equal test broadcast down it.
BranchMasks build_masks(const PopulationMatrix& population, const BestAnt& best,
                        const PopulationMatrix& previous, ConditionScope scope);

/// Whole-matrix rate of change: zeros, then one masked pass per branch
/// using the shared per-element rules. Fitness rows broadcast down columns.
PopulationMatrix rate_of_change(const PopulationMatrix& population,
                                const PopulationMatrix& previous, const BestAnt& best,
                                const FitnessVector& fitness,
                                const FitnessVector& previous_fitness,
                                const PopulationMatrix& r, const BranchMasks& masks);

/// One iteration as whole-matrix operations; bit-identical to step() on the
/// same state and stream. Consumes exactly D*N draws.
void step_vector(RunState& state, const RunConfig& config, const FunctionSpec& spec,
                 RngStream& stream);

/// Full vectorized run; same contract as run(), trajectory-identical for
/// equal seeds.
RunResult run_vector(const RunConfig& config, const IterationObserver& observer = {});

}  // namespace ana
