#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "semilab/grid.hpp"

namespace testsupport {

using semilab::GridFunction;
using semilab::GridPtr;

inline GridFunction bump(const GridPtr& g, double centre = 0.0, double width = 1.0, double height = 1.0) {
    return GridFunction::from(g, [=](double x) {
        const double y = (x - centre) / width;
        return height * std::exp(-y * y);
    });
}

/// Smooth random probe: a sum of a few Gaussian bumps with seeded parameters.
inline GridFunction random_smooth(const GridPtr& g, std::mt19937_64& rng, double amplitude = 1.0) {
    std::uniform_real_distribution<double> c(-2.5, 2.5), w(0.5, 1.5), h(-amplitude, amplitude);
    const double c1 = c(rng), c2 = c(rng), c3 = c(rng);
    const double w1 = w(rng), w2 = w(rng), w3 = w(rng);
    const double h1 = h(rng), h2 = h(rng), h3 = h(rng);
    return GridFunction::from(g, [=](double x) {
        const auto b = [x](double cc, double ww) { return std::exp(-(x - cc) * (x - cc) / (ww * ww)); };
        return h1 * b(c1, w1) + h2 * b(c2, w2) + h3 * b(c3, w3);
    });
}

/// Lattice values drawn uniformly from [lo, hi].
inline GridFunction random_values(const GridPtr& g, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(g->size());
    for (auto& e : v) e = u(rng);
    return GridFunction(g, std::move(v));
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b, std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    // least-squares slope of log y against log x
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsupport
