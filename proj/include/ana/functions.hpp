#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ana/bounds.hpp"
#include "ana/population.hpp"

namespace ana {

class UnknownFunctionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Objective function identity.
///
/// Every registered function carries two evaluation routes that must agree
/// bit for bit: a scalar route over one position and a batched route over a
/// whole population. The batched route may run agents side by side but never
/// reorders the arithmetic inside one agent's reduction, so both routes
/// produce the same value sequence per agent.
struct FunctionSpec {
    using ScalarEval = double (*)(std::span<const double>);
    /// rows points at a row-major (dimension-major) copy of the population;
    /// row d is the d-th coordinate of every agent, contiguous. work has
    /// room for two extra length-N accumulator rows. The three buffers
    /// never overlap, which the signature promises so the agent loops can
    /// vectorize without runtime alias checks.
    using BatchEval = void (*)(const double* __restrict rows, int dim, int agents,
                               double* __restrict out, double* __restrict work);

    std::string id;
    int dimension_default = 10;
    Bounds bounds_default{-100.0, 100.0};
    double known_optimum_value = 0.0;
    /// All registry optima sit at a constant-coordinate point; position is
    /// this coordinate repeated over every dimension.
    double optimum_coordinate = 0.0;
    int repeat = 1;

    ScalarEval scalar_eval = nullptr;
    BatchEval batch_eval = nullptr;

    std::vector<double> optimizer(int dimension) const {
        return std::vector<double>(static_cast<std::size_t>(dimension), optimum_coordinate);
    }
};

/// All registered base functions, in registry order.
const std::vector<FunctionSpec>& registry();

std::vector<std::string> registered_names();

/// Resolve a function name. Plain names come from the registry; names of the
/// form heavy_<base>_<k> resolve to cost_amplify(lookup(base), k).
FunctionSpec lookup(const std::string& name);

/// Evaluate one position. Runs the objective `repeat` times and returns the
/// final repetition's value.
double evaluate(const FunctionSpec& spec, std::span<const double> position);

/// Evaluate every column of the population; values[a] is bit-identical to
/// evaluate(spec, column a).
FitnessVector evaluate_population(const FunctionSpec& spec, const PopulationMatrix& population);

/// Same, writing into an existing vector so hot loops can reuse storage.
void evaluate_population(const FunctionSpec& spec, const PopulationMatrix& population,
                         FitnessVector& out);

/// Wrap a spec so each evaluation performs the base arithmetic k times and
/// returns the last repetition: identical values, k times the work.
FunctionSpec cost_amplify(const FunctionSpec& spec, int k);

}  // namespace ana
