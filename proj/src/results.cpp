#include "ana/results.hpp"

#include <stdexcept>

namespace ana {

const char* to_string(Backend backend) {
    return backend == Backend::scalar ? "scalar" : "vector";
}

Backend backend_from_string(const std::string& name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "vector") return Backend::vector;
    throw std::invalid_argument("unknown backend: " + name);
}

}  // namespace ana
