#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ana/bounds.hpp"
#include "ana/rng.hpp"
#include "ana/run_config.hpp"

namespace ana {

/// D x N grid of agent coordinates: element (d, a) is dimension d of agent a.
///
/// Storage is agent-contiguous, which is also the canonical fill order, so a
/// flat sequential pass visits elements in exactly the order both backends
/// consume random draws. Columns (whole agents) are contiguous spans.
class PopulationMatrix {
public:
    PopulationMatrix() = default;
    PopulationMatrix(int dimension, int agents, double value = 0.0)
        : dim_(dimension),
          agents_(agents),
          data_(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(agents), value) {}

    double& at(int d, int a) { return data_[index(d, a)]; }
    double at(int d, int a) const { return data_[index(d, a)]; }

    int dimension() const { return dim_; }
    int agents() const { return agents_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> column(int a) {
        return {data_.data() + static_cast<std::size_t>(a) * dim_, static_cast<std::size_t>(dim_)};
    }
    std::span<const double> column(int a) const {
        return {data_.data() + static_cast<std::size_t>(a) * dim_, static_cast<std::size_t>(dim_)};
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const PopulationMatrix& other) const {
        return dim_ == other.dim_ && agents_ == other.agents_;
    }

private:
    std::size_t index(int d, int a) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(d);
    }

    int dim_ = 0;
    int agents_ = 0;
    std::vector<double> data_;
};

/// Objective value of every agent, indexed like the matrix columns.
using FitnessVector = std::vector<double>;

/// The population minimizer: smallest fitness, lowest index on ties.
struct BestAnt {
    int index = 0;
    double fitness = 0.0;
    std::vector<double> position;
};

BestAnt find_best(const FitnessVector& fitness, const PopulationMatrix& population);

/// Fill a fresh D x N matrix with uniform draws on [lower, upper), one draw
/// per element in agent-major, dimension-minor order.
PopulationMatrix init_population(const RunConfig& config, RngStream& stream);

/// Clamp every element into [lower, upper]; idempotent.
void clamp_to_bounds(PopulationMatrix& population, const Bounds& bounds);

}  // namespace ana
