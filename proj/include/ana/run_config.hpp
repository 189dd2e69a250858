#pragma once

#include <cstdint>
#include <string>

#include "ana/bounds.hpp"

namespace ana {

/// Whether the equality tests that select update branches A/B apply to
/// each element independently or to a whole agent column at once.
enum class ConditionScope { element, agent };

const char* to_string(ConditionScope scope);
ConditionScope condition_scope_from_string(const std::string& name);

/// Immutable parameters of a single optimization run.
struct RunConfig {
    std::string function_id = "sphere";
    int dimension = 10;
    int agents = 30;
    int iterations = 500;
    std::uint64_t seed = 1;
    Bounds bounds{-100.0, 100.0};
    ConditionScope scope = ConditionScope::element;

    void validate() const;
};

}  // namespace ana
