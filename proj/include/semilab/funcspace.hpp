#pragma once

#include <cstddef>
#include <vector>

#include "semilab/grid.hpp"

namespace semilab {

enum class NormPart { full, positive };

/// sup_x |f(x)| kappa(x), or sup_x f^+(x) kappa(x) for NormPart::positive.
/// Sentinels contribute 0 to the positive part; the full norm rejects them.
double weighted_sup_norm(const GridFunction& f, NormPart part = NormPart::full);

/// Plain sup |f| over the closed window [-radius, radius].
double sup_on_window(const GridFunction& f, double radius);
/// max over [-radius, radius] of (a - b), positive part ignored; may be negative.
double max_difference_on_window(const GridFunction& a, const GridFunction& b, double radius);

/// Largest discrete slope |f(x_{i+1}) - f(x_i)| / dx over the window.
double discrete_lipschitz(const GridFunction& f, double radius);

struct MixedConvergenceReport {
    double kappa_bound = 0.0;
    std::vector<double> radii;
    /// Per window: max over the last-third tail of ||f - f_n||_{inf,K}.
    std::vector<double> tail_errors;
    /// Per window: ||f - f_N||_{inf,K} for the final element.
    std::vector<double> final_errors;
    bool converged = false;
};

MixedConvergenceReport mixed_convergence_report(const std::vector<GridFunction>& fs,
                                                const GridFunction& f, double tolerance);

/// Smooth compactly supported kernel on [-1, 1], tabulated and normalised to
/// unit mass; eta_n(x) = n eta(n x).
class Mollifier {
public:
    explicit Mollifier(int index, std::size_t table_points = 2001);

    int index() const { return index_; }
    double radius() const { return 1.0 / index_; }
    /// Profile eta on [-1, 1] (0 outside).
    double profile(double y) const;
    /// Trapezoidal mass of the tabulated profile.
    double profile_mass() const;
    std::span<const double> table() const { return table_; }

    /// Lattice weights for offsets k*dx, |k| <= K, summing to 1.
    std::vector<double> lattice_weights(double dx) const;

private:
    int index_;
    std::vector<double> table_;
};

/// Discrete convolution f * eta_n with clamped extension.
GridFunction mollify(const GridFunction& f, const Mollifier& m);

/// Smooth cutoff: 1 on [-n, n], smooth decay on n < |x| < n + 1, 0 beyond.
class Cutoff {
public:
    Cutoff(int index, const GridPtr& grid);
    int index() const { return index_; }
    const GridFunction& values() const { return values_; }
    static double shape(int index, double x);

private:
    int index_;
    GridFunction values_;
};

GridFunction truncate(const GridFunction& f, const Cutoff& c);

/// Central second-order stencils; second-order one-sided at the two ends.
GridFunction fd_derivative(const GridFunction& f, int order);

}  // namespace semilab
