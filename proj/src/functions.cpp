#include "ana/functions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ana {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Compiler fence between repeated evaluations of the same input: without it
// the amplified specs would collapse back to a single evaluation.
inline void clobber_memory() { asm volatile("" ::: "memory"); }

// Every function below exists in two routes. The scalar route reduces one
// contiguous position; the batched route walks dimensions in the same
// ascending order but keeps one accumulator per agent, so each column sees
// the exact arithmetic sequence the scalar route would produce. Rows are
// contiguous per dimension, which lets the compiler run agents side by side.

// sphere: sum x_i^2
double sphere_scalar(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i];
    return s;
}
// Register-blocked: sphere is the base of the cost-amplified timing runs,
// so its accumulators stay in registers across the dimension sweep instead
// of bouncing through out[] once per row.
void sphere_batch(const double* __restrict rows, int dim, int n, double* __restrict out,
                  double* __restrict) {
    constexpr int kBlock = 8;
    int a0 = 0;
    for (; a0 + kBlock <= n; a0 += kBlock) {
        double acc[kBlock] = {};
        for (int d = 0; d < dim; ++d) {
            const double* row = rows + static_cast<std::size_t>(d) * n + a0;
            for (int j = 0; j < kBlock; ++j) acc[j] += row[j] * row[j];
        }
        for (int j = 0; j < kBlock; ++j) out[a0 + j] = acc[j];
    }
    // Leftover agents as a row sweep; independent accumulators in out[]
    // rather than one latency chain per column.
    if (a0 < n) {
        std::fill(out + a0, out + n, 0.0);
        for (int d = 0; d < dim; ++d) {
            const double* row = rows + static_cast<std::size_t>(d) * n;
            for (int a = a0; a < n; ++a) out[a] += row[a] * row[a];
        }
    }
}

// abs_plus_prod: sum |x_i| + prod |x_i|
double abs_plus_prod_scalar(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ax = std::fabs(x[i]);
        sum += ax;
        prod *= ax;
    }
    return sum + prod;
}
void abs_plus_prod_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict work) {
    std::fill_n(out, n, 0.0);
    std::fill_n(work, n, 1.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a) {
            const double ax = std::fabs(row[a]);
            out[a] += ax;
            work[a] *= ax;
        }
    }
    for (int a = 0; a < n; ++a) out[a] += work[a];
}

// cumsum_sq: sum over i of (prefix sum through i)^2
double cumsum_sq_scalar(std::span<const double> x) {
    double acc = 0.0;
    double prefix = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        prefix += x[i];
        acc += prefix * prefix;
    }
    return acc;
}
void cumsum_sq_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict work) {
    std::fill_n(out, n, 0.0);
    std::fill_n(work, n, 0.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a) {
            work[a] += row[a];
            out[a] += work[a] * work[a];
        }
    }
}

// max_abs: max |x_i|
double max_abs_scalar(std::span<const double> x) {
    double m = std::fabs(x[0]);
    for (std::size_t i = 1; i < x.size(); ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}
void max_abs_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict) {
    for (int a = 0; a < n; ++a) out[a] = std::fabs(rows[a]);
    for (int d = 1; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a) out[a] = std::max(out[a], std::fabs(row[a]));
    }
}

// rosenbrock: sum 100 (x_{i+1} - x_i^2)^2 + (x_i - 1)^2
double rosenbrock_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double t1 = x[i + 1] - x[i] * x[i];
        const double t2 = x[i] - 1.0;
        acc += 100.0 * (t1 * t1) + t2 * t2;
    }
    return acc;
}
void rosenbrock_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict) {
    std::fill_n(out, n, 0.0);
    for (int d = 0; d + 1 < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        const double* next = row + n;
        for (int a = 0; a < n; ++a) {
            const double t1 = next[a] - row[a] * row[a];
            const double t2 = row[a] - 1.0;
            out[a] += 100.0 * (t1 * t1) + t2 * t2;
        }
    }
}

// step: sum floor(x_i + 0.5)^2
double step_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = std::floor(x[i] + 0.5);
        acc += t * t;
    }
    return acc;
}
void step_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict) {
    std::fill_n(out, n, 0.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a) {
            const double t = std::floor(row[a] + 0.5);
            out[a] += t * t;
        }
    }
}

// rastrigin: sum x_i^2 - 10 cos(2 pi x_i) + 10
double rastrigin_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += x[i] * x[i] - 10.0 * std::cos(kTwoPi * x[i]) + 10.0;
    return acc;
}
void rastrigin_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict) {
    std::fill_n(out, n, 0.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a)
            out[a] += row[a] * row[a] - 10.0 * std::cos(kTwoPi * row[a]) + 10.0;
    }
}

// ackley: -20 exp(-0.2 sqrt(mean x^2)) - exp(mean cos(2 pi x)) + 20 + e
double ackley_scalar(std::span<const double> x) {
    double ss = 0.0;
    double sc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ss += x[i] * x[i];
        sc += std::cos(kTwoPi * x[i]);
    }
    const double nd = static_cast<double>(x.size());
    return -20.0 * std::exp(-0.2 * std::sqrt(ss / nd)) - std::exp(sc / nd) + 20.0 +
           std::numbers::e;
}
void ackley_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict work) {
    double* ss = work;
    double* sc = work + n;
    std::fill_n(ss, n, 0.0);
    std::fill_n(sc, n, 0.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        for (int a = 0; a < n; ++a) {
            ss[a] += row[a] * row[a];
            sc[a] += std::cos(kTwoPi * row[a]);
        }
    }
    const double nd = static_cast<double>(dim);
    for (int a = 0; a < n; ++a)
        out[a] = -20.0 * std::exp(-0.2 * std::sqrt(ss[a] / nd)) - std::exp(sc[a] / nd) + 20.0 +
                 std::numbers::e;
}

// griewank: sum x_i^2/4000 - prod cos(x_i / sqrt(i+1)) + 1
double griewank_scalar(std::span<const double> x) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double scale = std::sqrt(static_cast<double>(i + 1));
        s += x[i] * x[i] / 4000.0;
        p *= std::cos(x[i] / scale);
    }
    return s - p + 1.0;
}
void griewank_batch(const double* __restrict rows, int dim, int n, double* __restrict out, double* __restrict work) {
    std::fill_n(out, n, 0.0);
    std::fill_n(work, n, 1.0);
    for (int d = 0; d < dim; ++d) {
        const double* row = rows + static_cast<std::size_t>(d) * n;
        const double scale = std::sqrt(static_cast<double>(d + 1));
        for (int a = 0; a < n; ++a) {
            out[a] += row[a] * row[a] / 4000.0;
            work[a] *= std::cos(row[a] / scale);
        }
    }
    for (int a = 0; a < n; ++a) out[a] = out[a] - work[a] + 1.0;
}

FunctionSpec make_spec(std::string id, double optimum_coordinate, FunctionSpec::ScalarEval scalar,
                       FunctionSpec::BatchEval batch) {
    FunctionSpec spec;
    spec.id = std::move(id);
    spec.optimum_coordinate = optimum_coordinate;
    spec.scalar_eval = scalar;
    spec.batch_eval = batch;
    return spec;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

const std::vector<FunctionSpec>& registry() {
    static const std::vector<FunctionSpec> specs = [] {
        std::vector<FunctionSpec> r;
        r.push_back(make_spec("sphere", 0.0, sphere_scalar, sphere_batch));
        r.push_back(make_spec("abs_plus_prod", 0.0, abs_plus_prod_scalar, abs_plus_prod_batch));
        r.push_back(make_spec("cumsum_sq", 0.0, cumsum_sq_scalar, cumsum_sq_batch));
        r.push_back(make_spec("max_abs", 0.0, max_abs_scalar, max_abs_batch));
        r.push_back(make_spec("rosenbrock", 1.0, rosenbrock_scalar, rosenbrock_batch));
        r.push_back(make_spec("step", 0.0, step_scalar, step_batch));
        r.push_back(make_spec("rastrigin", 0.0, rastrigin_scalar, rastrigin_batch));
        r.push_back(make_spec("ackley", 0.0, ackley_scalar, ackley_batch));
        r.push_back(make_spec("griewank", 0.0, griewank_scalar, griewank_batch));
        return r;
    }();
    return specs;
}

std::vector<std::string> registered_names() {
    std::vector<std::string> names;
    names.reserve(registry().size());
    for (const auto& spec : registry()) names.push_back(spec.id);
    return names;
}

FunctionSpec lookup(const std::string& name) {
    for (const auto& spec : registry()) {
        if (spec.id == name) return spec;
    }

    // heavy_<base>_<k>; base itself may contain underscores, the repetition
    // count is everything after the last one.
    constexpr const char* kHeavy = "heavy_";
    if (name.rfind(kHeavy, 0) == 0) {
        const std::string rest = name.substr(6);
        const std::size_t split = rest.rfind('_');
        if (split != std::string::npos) {
            const std::string base = rest.substr(0, split);
            const std::string count = rest.substr(split + 1);
            if (all_digits(count)) {
                for (const auto& spec : registry()) {
                    if (spec.id == base) {
                        try {
                            return cost_amplify(spec, std::stoi(count));
                        } catch (const std::out_of_range&) {
                            throw UnknownFunctionError("repetition count out of range in '" +
                                                       name + "'");
                        } catch (const std::invalid_argument&) {
                            throw UnknownFunctionError("bad repetition count in '" + name + "'");
                        }
                    }
                }
            }
        }
    }

    std::string available;
    for (const auto& spec : registry()) {
        if (!available.empty()) available += ", ";
        available += spec.id;
    }
    throw UnknownFunctionError("unknown function '" + name + "'; available: " + available +
                               ", heavy_<base>_<k>");
}

double evaluate(const FunctionSpec& spec, std::span<const double> position) {
    if (position.empty())
        throw std::invalid_argument("evaluate: dimension mismatch (empty position)");
    double value = 0.0;
    for (int rep = 0; rep < spec.repeat; ++rep) {
        value = spec.scalar_eval(position);
        clobber_memory();
    }
    return value;
}

void evaluate_population(const FunctionSpec& spec, const PopulationMatrix& population,
                         FitnessVector& out) {
    const int dim = population.dimension();
    const int n = population.agents();
    if (dim < 1 || n < 1)
        throw std::invalid_argument("evaluate_population: dimension mismatch (empty population)");

    // One dimension-major copy up front; every repetition then streams whole
    // rows instead of strided columns.
    thread_local std::vector<double> rows;
    thread_local std::vector<double> work;
    rows.resize(population.size());
    work.resize(2 * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        const auto column = population.column(a);
        for (int d = 0; d < dim; ++d) rows[static_cast<std::size_t>(d) * n + a] = column[d];
    }

    out.resize(static_cast<std::size_t>(n));
    for (int rep = 0; rep < spec.repeat; ++rep) {
        spec.batch_eval(rows.data(), dim, n, out.data(), work.data());
        clobber_memory();
    }
}

FitnessVector evaluate_population(const FunctionSpec& spec, const PopulationMatrix& population) {
    FitnessVector out;
    evaluate_population(spec, population, out);
    return out;
}

FunctionSpec cost_amplify(const FunctionSpec& spec, int k) {
    if (k < 1) throw std::invalid_argument("cost_amplify: k must be >= 1");
    FunctionSpec amplified = spec;
    amplified.id = spec.id + "_" + std::to_string(k);
    amplified.repeat = spec.repeat * k;
    return amplified;
}

}  // namespace ana
