#include "ana/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ana {
namespace {

inline bool bits_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool matrices_equal(const PopulationMatrix& a, const PopulationMatrix& b, const char* component,
                    EquivalenceReport& report) {
    for (int agent = 0; agent < a.agents(); ++agent) {
        for (int d = 0; d < a.dimension(); ++d) {
            if (!bits_equal(a.at(d, agent), b.at(d, agent))) {
                report.component = component;
                report.divergent_dimension = d;
                report.divergent_agent = agent;
                return false;
            }
        }
    }
    return true;
}

bool rows_equal(const FitnessVector& a, const FitnessVector& b, const char* component,
                EquivalenceReport& report) {
    for (std::size_t agent = 0; agent < a.size(); ++agent) {
        if (!bits_equal(a[agent], b[agent])) {
            report.component = component;
            report.divergent_agent = static_cast<int>(agent);
            return false;
        }
    }
    return true;
}

// Full bit-level state comparison; fills the report's component/element
// fields on the first difference found.
bool states_equal(const RunState& a, const RunState& b, EquivalenceReport& report) {
    if (!rows_equal(a.fitness, b.fitness, "fitness", report)) return false;
    if (!rows_equal(a.previous_fitness, b.previous_fitness, "previous_fitness", report))
        return false;
    if (a.best.index != b.best.index) {
        report.component = "best_index";
        return false;
    }
    if (!bits_equal(a.best.fitness, b.best.fitness)) {
        report.component = "best_fitness";
        return false;
    }
    if (!matrices_equal(a.population, b.population, "population", report)) return false;
    if (!matrices_equal(a.previous, b.previous, "previous", report)) return false;
    return true;
}

RunResult run_backend(const RunConfig& config, Backend backend) {
    return backend == Backend::scalar ? run(config) : run_vector(config);
}

}  // namespace

TrialStats run_trials(const RunConfig& config, Backend backend, int runs) {
    if (runs < 1) throw std::invalid_argument("run_trials: runs must be >= 1");

    std::vector<double> finals;
    finals.reserve(static_cast<std::size_t>(runs));
    double total_ns = 0.0;
    for (int i = 0; i < runs; ++i) {
        RunConfig trial = config;
        trial.seed = config.seed + static_cast<std::uint64_t>(i);
        const RunResult result = run_backend(trial, backend);
        finals.push_back(result.final_best);
        total_ns += static_cast<double>(result.elapsed_ns);
    }

    TrialStats stats;
    stats.function_id = config.function_id;
    stats.backend = backend;
    stats.runs = runs;
    double sum = 0.0;
    for (double v : finals) sum += v;
    stats.mean_best = sum / runs;
    if (runs > 1) {
        double ss = 0.0;
        for (double v : finals) {
            const double d = v - stats.mean_best;
            ss += d * d;
        }
        stats.std_best = std::sqrt(ss / (runs - 1));
    }
    stats.mean_seconds = total_ns / runs / 1e9;
    return stats;
}

EquivalenceReport equivalence_check(const RunConfig& config, const StepFn& reference,
                                    const StepFn& candidate) {
    config.validate();
    const FunctionSpec spec = lookup(config.function_id);

    RngStream reference_stream(config.seed);
    RngStream candidate_stream(config.seed);
    RunState reference_state = init_state(config, spec, reference_stream);
    RunState candidate_state = init_state(config, spec, candidate_stream);

    EquivalenceReport report;
    if (!states_equal(reference_state, candidate_state, report)) {
        report.pass = false;
        report.first_divergence_iteration = 0;
        return report;
    }
    for (int t = 1; t <= config.iterations; ++t) {
        reference(reference_state, config, spec, reference_stream);
        candidate(candidate_state, config, spec, candidate_stream);
        if (!states_equal(reference_state, candidate_state, report)) {
            report.pass = false;
            report.first_divergence_iteration = t;
            return report;
        }
    }
    return report;
}

EquivalenceReport equivalence_check(const RunConfig& config) {
    return equivalence_check(config, &step, &step_vector);
}

ComparisonReport compare(const RunConfig& config, int warmups, int reps) {
    if (warmups < 0) throw std::invalid_argument("compare: warmups must be >= 0");
    if (reps < 1) throw std::invalid_argument("compare: reps must be >= 1");

    ComparisonReport report;
    report.function_id = config.function_id;
    report.equivalent = equivalence_check(config).pass;

    // Backends are timed in alternation so slow drift in machine load hits
    // both the same way; the median per backend then discards outliers.
    for (int i = 0; i < warmups; ++i) {
        (void)run_backend(config, Backend::scalar);
        (void)run_backend(config, Backend::vector);
    }
    std::vector<std::uint64_t> scalar_samples;
    std::vector<std::uint64_t> vector_samples;
    scalar_samples.reserve(static_cast<std::size_t>(reps));
    vector_samples.reserve(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        scalar_samples.push_back(run_backend(config, Backend::scalar).elapsed_ns);
        vector_samples.push_back(run_backend(config, Backend::vector).elapsed_ns);
    }
    std::sort(scalar_samples.begin(), scalar_samples.end());
    std::sort(vector_samples.begin(), vector_samples.end());
    report.scalar_seconds = static_cast<double>(scalar_samples[scalar_samples.size() / 2]) / 1e9;
    report.vector_seconds = static_cast<double>(vector_samples[vector_samples.size() / 2]) / 1e9;
    report.speedup = report.scalar_seconds / report.vector_seconds;
    return report;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

EmitFormat emit_format_from_string(const std::string& name) {
    if (name == "csv") return EmitFormat::csv;
    if (name == "json") return EmitFormat::json;
    throw std::invalid_argument("unknown format: " + name);
}

void emit_results(std::span<const TrialStats> results, EmitFormat format, std::ostream& out) {
    if (format == EmitFormat::csv) {
        out << "function,backend,runs,mean_best,std_best,mean_seconds\n";
        for (const auto& s : results) {
            out << s.function_id << ',' << to_string(s.backend) << ',' << s.runs << ','
                << format_double(s.mean_best) << ',' << format_double(s.std_best) << ','
                << format_double(s.mean_seconds) << '\n';
        }
        return;
    }
    if (results.empty()) {
        out << "[]\n";
        return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& s = results[i];
        out << "  {\"function\": \"" << s.function_id << "\", \"backend\": \""
            << to_string(s.backend) << "\", \"runs\": " << s.runs
            << ", \"mean_best\": " << format_double(s.mean_best)
            << ", \"std_best\": " << format_double(s.std_best)
            << ", \"mean_seconds\": " << format_double(s.mean_seconds) << '}';
        out << (i + 1 < results.size() ? ",\n" : "\n");
    }
    out << "]\n";
}

void write_trace_csv(const RunResult& result, std::ostream& out) {
    out << "iteration,best_fitness,best_agent_index\n";
    for (const auto& entry : result.trace) {
        out << entry.iteration << ',' << format_double(entry.best_fitness) << ','
            << entry.best_index << '\n';
    }
}

void write_compare_json(const ComparisonReport& report, std::ostream& out) {
    out << "{\n"
        << "  \"function_id\": \"" << report.function_id << "\",\n"
        << "  \"scalar_seconds\": " << format_double(report.scalar_seconds) << ",\n"
        << "  \"vector_seconds\": " << format_double(report.vector_seconds) << ",\n"
        << "  \"speedup\": " << format_double(report.speedup) << ",\n"
        << "  \"equivalent\": " << (report.equivalent ? "true" : "false") << "\n"
        << "}\n";
}

void write_equivalence_report(const EquivalenceReport& report, std::ostream& out) {
    if (report.pass) {
        out << "equivalence: PASS\n";
        return;
    }
    out << "equivalence: FAIL\n";
    out << "first divergence: iteration " << report.first_divergence_iteration << ", component "
        << report.component;
    if (report.divergent_agent >= 0) {
        out << ", agent " << report.divergent_agent;
        if (report.divergent_dimension >= 0) out << ", dimension " << report.divergent_dimension;
    }
    out << '\n';
}

void write_trajectory_csv(const RunConfig& config, Backend backend, std::ostream& out) {
    out << "iteration,agent";
    for (int d = 0; d < config.dimension; ++d) out << ",d" << d;
    out << '\n';

    const IterationObserver observer = [&](const RunState& state) {
        for (int a = 0; a < state.population.agents(); ++a) {
            out << state.iteration << ',' << a;
            for (int d = 0; d < state.population.dimension(); ++d)
                out << ',' << format_double(state.population.at(d, a));
            out << '\n';
        }
    };
    if (backend == Backend::scalar)
        (void)run(config, observer);
    else
        (void)run_vector(config, observer);
}

}  // namespace ana
