#pragma once

#include <optional>
#include <vector>

#include "semilab/grid.hpp"

namespace semilab {

/// Window radii delta_n attached to the sequence index n (0-based storage).
class WindowSchedule {
public:
    explicit WindowSchedule(std::vector<double> radii);
    /// delta_n = max(dx, 1/n) for n = 1..count.
    static WindowSchedule standard(const WeightedGrid& grid, std::size_t count);

    const std::vector<double>& radii() const { return radii_; }
    std::size_t size() const { return radii_.size(); }
    void validate(const WeightedGrid& grid) const;

private:
    std::vector<double> radii_;
};

/// Lattice half-width of the open ball |y - x| < delta (delta = dx gives the point itself).
std::size_t open_ball_steps(double delta, double dx);

/// sup of f over the open lattice ball of the given half-width around every point.
GridFunction window_sup(const GridFunction& f, std::size_t steps);

struct GammaLimsupResult {
    /// inf over tail starts of sup of window sups; on finite data this is the last window sup.
    GridFunction exact;
    /// max of the window sups over the last third of the sequence.
    GridFunction tail_max;
    /// min of the window sups over the last third of the sequence.
    GridFunction tail_min;
};

/// Sequences whose positive weighted norm exceeds this value are rejected as unbounded.
inline constexpr double kUpperBoundCeiling = 1e12;

GammaLimsupResult gamma_limsup_report(const std::vector<GridFunction>& fs, const WindowSchedule& w);
GridFunction gamma_limsup(const std::vector<GridFunction>& fs, const WindowSchedule& w);

struct GammaLimResult {
    std::optional<GridFunction> limit;
    double worst_gap = 0.0;
    double worst_x = 0.0;
    double tolerance = 0.0;
};

GammaLimResult gamma_lim(const std::vector<GridFunction>& fs, const WindowSchedule& w);

/// Upper eps-parallel function over closed lattice windows |y - x| <= eps.
GridFunction epsilon_parallel(const GridFunction& f, double eps);

struct DominationEntry {
    double epsilon = 0.0;
    double window = 0.0;
    /// 1-based tail index; empty when the last element already violates the bound.
    std::optional<std::size_t> n0;
    double worst_gap = 0.0;
};

std::vector<DominationEntry> gamma_domination_check(const std::vector<GridFunction>& fs,
                                                    const GridFunction& f,
                                                    const std::vector<double>& eps_list);

struct UscHullResult {
    GridFunction averaged;
    GridFunction hull;
};

/// Averages of the piecewise-linear interpolant over [x - r, x + r].
GridFunction ball_average(const GridFunction& g, double r);

/// radii must be strictly decreasing; empty selects {2dx, dx, dx/2, dx/4}.
UscHullResult usc_hull_via_averages(const GridFunction& g, std::vector<double> radii = {});

}  // namespace semilab
