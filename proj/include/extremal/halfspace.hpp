#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace extremal {

using Vector = std::vector<double>;

/// Affine function l(x) = n.x + b; the admissible side is l >= 0.
struct Halfspace {
    Vector normal;
    double offset = 0.0;

    std::size_t dim() const { return normal.size(); }

    double eval(std::span<const double> x) const {
        double s = offset;
        for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
        return s;
    }
};

}  // namespace extremal
