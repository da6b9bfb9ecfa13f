#pragma once

#include <vector>

#include "semilab/grid.hpp"
#include "semilab/operators.hpp"

namespace semilab {

/// Step width h on [0, t] with k = max{j : j h <= t}.
struct Partition {
    double h = 0.0;
    double t = 0.0;
    long k = 0;

    static Partition make(double h, double t);
};

class Schedule {
public:
    enum class Mode { generic, dyadic };

    /// h_n = t0 * 2^{-n} for n = first..last; time lattices nest.
    static Schedule dyadic(double t0, int first = 1, int last = 8);
    /// Strictly decreasing positive widths, labelled n = 1, 2, ...
    static Schedule generic(std::vector<double> hs);

    Mode mode() const { return mode_; }
    const std::vector<double>& widths() const { return hs_; }
    const std::vector<int>& labels() const { return labels_; }
    std::size_t size() const { return hs_.size(); }

private:
    Mode mode_ = Mode::generic;
    std::vector<double> hs_;
    std::vector<int> labels_;
};

/// Expected ordering of successive dyadic iterates.
enum class Monotone { none, nondecreasing, nonincreasing };

struct RunOptions {
    double tolerance = 1e-4;
    double ceiling = 1e6;
    Monotone direction = Monotone::none;
};

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;
    long k = 0;
    double sup_norm = 0.0;
    /// ||f_n - f_{n-1}||_{inf,K} per compact window; 0 for the first row.
    std::vector<double> diffs;
    double lip_const = 0.0;
    /// Largest pointwise violation of the expected ordering on the largest window.
    double monotone_violation = 0.0;
};

struct ConvergenceReport {
    std::vector<double> radii;
    std::vector<ConvergenceRow> rows;
    double tolerance = 0.0;
    bool converged = false;
    bool diverged = false;
    long violation_count = 0;
    double max_violation = 0.0;
};

struct ChernoffRun {
    std::vector<GridFunction> iterates;
    ConvergenceReport report;
};

GridFunction iterate(const StepOperator& step, const Partition& p, const GridFunction& f);

ChernoffRun chernoff_run(const StepOperator& step, const GridFunction& f, double t,
                         const Schedule& s, const RunOptions& options = {});

/// max over n and |x - y| <= delta of |f_n(x) - f_n(y)|, one entry per delta.
std::vector<double> equicontinuity_modulus(const std::vector<GridFunction>& fs,
                                           const std::vector<double>& radii);

struct LipschitzRow {
    int n = 0;
    double h = 0.0;
    double sup_norm = 0.0;
    double lip_const = 0.0;
};

struct LipschitzTrack {
    std::vector<LipschitzRow> rows;
    double bound = 0.0;
    bool within = true;
    /// Measured constants after t/2 and after a further t/2 at the finest width.
    double half_lip = 0.0;
    double composed_lip = 0.0;
    /// composed_lip <= e^{L t/2} half_lip <= e^{L t} r.
    bool composition_ok = true;
};

/// Iterates the probe clamp(r x, -r, r), compares slopes to e^{L t} r and checks
/// that the bound composes: beta(beta(r, t/2), t/2) <= beta(r, t).
LipschitzTrack lipschitz_bound_track(const StepOperator& step, double r, double t,
                                     const Schedule& s, const GridPtr& grid, double L = 0.0);

}  // namespace semilab
