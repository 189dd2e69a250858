#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ana/run_config.hpp"

namespace ana {

enum class Backend { scalar, vector };

const char* to_string(Backend backend);
Backend backend_from_string(const std::string& name);

/// Best-so-far snapshot recorded after each iteration (1-based).
struct TraceEntry {
    int iteration = 0;
    double best_fitness = 0.0;
    int best_index = 0;
};

/// One run: convergence trace plus wall-clock time.
struct RunResult {
    std::vector<TraceEntry> trace;
    double final_best = 0.0;
    std::uint64_t elapsed_ns = 0;
    Backend backend = Backend::scalar;
    RunConfig config;
};

/// Aggregate of `runs` independent runs of one function/backend pair.
/// std_best is the sample standard deviation (n-1 denominator), zero for a
/// single run.
struct TrialStats {
    std::string function_id;
    Backend backend = Backend::scalar;
    int runs = 0;
    double mean_best = 0.0;
    double std_best = 0.0;
    double mean_seconds = 0.0;
};

/// Wall-clock comparison of the two backends on one configuration.
struct ComparisonReport {
    std::string function_id;
    double scalar_seconds = 0.0;
    double vector_seconds = 0.0;
    double speedup = 0.0;  // scalar_seconds / vector_seconds
    bool equivalent = false;
};

}  // namespace ana
