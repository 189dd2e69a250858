#pragma once

#include <cmath>

namespace ana {

// Per-element update rules shared by both backends. Keeping the arithmetic
// in one place guarantees every branch yields the same bit pattern no
// matter which execution shape computes it.

/// Branch A: the element belongs to an agent sitting on the best position.
inline double delta_best(double r, double x) { return r * x; }

/// Branch B: the element is still at its previous position; move along the
/// line toward the best.
inline double delta_previous(double r, double x_best, double x) {
    return r * (x_best - x);
}

/// Tendency of a reference point toward the best ant: Pythagorean mix of
/// coordinate distance and fitness distance.
inline double tendency(double x_best_d, double x_ref_d, double fit_best, double fit_ref) {
    const double dx = x_best_d - x_ref_d;
    const double df = fit_best - fit_ref;
    return std::sqrt(dx * dx + df * df);
}

/// Deposition weight r * (T / T_prev). A vanishing T_prev would blow up the
/// ratio, so it degenerates to 1 and the weight collapses to r. Written as
/// a select so masked whole-matrix passes stay branch-free.
inline double deposition_weight(double r, double t, double t_prev) {
    return t_prev < 1e-12 ? r : r * (t / t_prev);
}

/// Branch C: rate of change toward the best, scaled by the deposition weight.
inline double delta_general(double dw, double x_best, double x) {
    return dw * (x_best - x);
}

}  // namespace ana
