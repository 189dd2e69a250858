#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ana {

/// Rectangular box limits applied to every coordinate of every agent.
struct Bounds {
    double lower = -100.0;
    double upper = 100.0;

    void validate() const {
        if (!std::isfinite(lower) || !std::isfinite(upper))
            throw std::invalid_argument("bounds must be finite");
        if (!(lower < upper))
            throw std::invalid_argument("bounds: lower must be strictly below upper");
    }

    double clamp(double v) const { return std::min(upper, std::max(lower, v)); }

    bool contains(double v) const { return v >= lower && v <= upper; }
};

}  // namespace ana
