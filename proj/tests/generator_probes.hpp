#pragma once

#include <cmath>
#include <vector>

#include "semilab/grid.hpp"

namespace testsupport {

/// Five bounded C^2 probes with bounded derivatives.
inline std::vector<semilab::GridFunction> smooth_probes(const semilab::GridPtr& g) {
    using semilab::GridFunction;
    return {
        GridFunction::from(g, [](double x) { return std::exp(-x * x); }),
        GridFunction::from(g, [](double x) { return 0.8 * std::exp(-(x - 0.5) * (x - 0.5) / 2.0); }),
        GridFunction::from(g, [](double x) { return std::sin(x) * std::exp(-x * x / 4.0); }),
        GridFunction::from(g, [](double x) { return std::tanh(x); }),
        GridFunction::from(g, [](double x) { return std::cos(x) * std::exp(-x * x / 8.0); }),
    };
}

/// sqrt|x| clamped at |x| = 4.
inline semilab::GridFunction root_probe(const semilab::GridPtr& g) {
    return semilab::GridFunction::from(g, [](double x) { return std::sqrt(std::min(std::abs(x), 4.0)); });
}

}  // namespace testsupport
