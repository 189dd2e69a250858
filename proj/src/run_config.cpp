#include "ana/run_config.hpp"

#include <stdexcept>

namespace ana {

const char* to_string(ConditionScope scope) {
    return scope == ConditionScope::element ? "element" : "agent";
}

ConditionScope condition_scope_from_string(const std::string& name) {
    if (name == "element") return ConditionScope::element;
    if (name == "agent") return ConditionScope::agent;
    throw std::invalid_argument("unknown condition scope: " + name);
}

void RunConfig::validate() const {
    if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
    if (agents < 1) throw std::invalid_argument("agents must be >= 1");
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    bounds.validate();
}

}  // namespace ana
