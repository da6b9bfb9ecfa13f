#include "semilab/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semilab/funcspace.hpp"

namespace semilab {

WindowSchedule::WindowSchedule(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw std::domain_error("window schedule: empty");
    for (std::size_t n = 0; n < radii_.size(); ++n) {
        if (!(radii_[n] > 0.0)) throw std::domain_error("window schedule: radii must be positive");
        if (n > 0 && radii_[n] > radii_[n - 1]) {
            throw std::domain_error("window schedule: radii must be nonincreasing");
        }
    }
}

WindowSchedule WindowSchedule::standard(const WeightedGrid& grid, std::size_t count) {
    std::vector<double> r(count);
    for (std::size_t n = 0; n < count; ++n) {
        r[n] = std::max(grid.dx(), 1.0 / static_cast<double>(n + 1));
    }
    return WindowSchedule(std::move(r));
}

void WindowSchedule::validate(const WeightedGrid& grid) const {
    if (radii_.front() > grid.span()) throw std::domain_error("window schedule: first radius exceeds span");
    if (radii_.back() < grid.dx() * (1.0 - 1e-9)) {
        throw std::domain_error("window schedule: radii below grid spacing");
    }
}

std::size_t open_ball_steps(double delta, double dx) {
    const double c = std::ceil(delta / dx - 1e-9);
    return c <= 1.0 ? 0 : static_cast<std::size_t>(c) - 1;
}

GridFunction window_sup(const GridFunction& f, std::size_t steps) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= steps ? i - steps : 0;
        const std::size_t hi = std::min(n - 1, i + steps);
        double best = kNegInf;
        for (std::size_t j = lo; j <= hi; ++j) best = std::max(best, f[j]);
        out[i] = best;
    }
    return GridFunction(f.grid_ptr(), std::move(out), Klass::usc);
}

namespace {

void check_sequence(const std::vector<GridFunction>& fs, const WindowSchedule& w) {
    if (fs.empty()) throw std::domain_error("gamma: empty sequence");
    if (w.size() < fs.size()) throw std::domain_error("gamma: window schedule shorter than sequence");
    const auto& g = fs.front().grid();
    w.validate(g);
    for (const auto& f : fs) {
        if (!f.grid().same_lattice(g)) throw std::domain_error("gamma: sequence on different grids");
        if (weighted_sup_norm(f, NormPart::positive) > kUpperBoundCeiling) {
            throw std::domain_error("gamma: sequence not bounded above");
        }
    }
}

// Discrete slope over pairs of finite neighbours.
double finite_slope(const GridFunction& f) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f.is_neg_inf(i) || f.is_neg_inf(i + 1)) continue;
        best = std::max(best, std::abs(f[i + 1] - f[i]));
    }
    return best / f.grid().dx();
}

}  // namespace

GammaLimsupResult gamma_limsup_report(const std::vector<GridFunction>& fs, const WindowSchedule& w) {
    check_sequence(fs, w);
    const double dx = fs.front().grid().dx();
    std::vector<GridFunction> sups;
    sups.reserve(fs.size());
    for (std::size_t n = 0; n < fs.size(); ++n) {
        sups.push_back(window_sup(fs[n], open_ball_steps(w.radii()[n], dx)));
    }
    const std::size_t npts = fs.front().size();
    const std::size_t tail_start = (2 * fs.size()) / 3;
    std::vector<double> exact(npts), tmax(npts), tmin(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        // inf over m of sup_{n >= m}, via suffix maxima.
        double suffix = kNegInf;
        double inf_over_m = std::numeric_limits<double>::infinity();
        for (std::size_t n = fs.size(); n-- > 0;) {
            suffix = std::max(suffix, sups[n][i]);
            inf_over_m = std::min(inf_over_m, suffix);
        }
        exact[i] = inf_over_m;
        double hi = kNegInf;
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t n = tail_start; n < fs.size(); ++n) {
            hi = std::max(hi, sups[n][i]);
            lo = std::min(lo, sups[n][i]);
        }
        tmax[i] = hi;
        tmin[i] = lo;
    }
    const auto& gp = fs.front().grid_ptr();
    return {GridFunction(gp, std::move(exact), Klass::usc), GridFunction(gp, std::move(tmax), Klass::usc),
            GridFunction(gp, std::move(tmin), Klass::usc)};
}

GridFunction gamma_limsup(const std::vector<GridFunction>& fs, const WindowSchedule& w) {
    return gamma_limsup_report(fs, w).exact;
}

GammaLimResult gamma_lim(const std::vector<GridFunction>& fs, const WindowSchedule& w) {
    auto rep = gamma_limsup_report(fs, w);
    GammaLimResult out;
    const double delta_last = w.radii()[fs.size() - 1];
    out.tolerance = 1e-8 + 2.0 * finite_slope(rep.exact) * delta_last;
    const auto& g = rep.exact.grid();
    for (std::size_t i = 0; i < rep.exact.size(); ++i) {
        const double hi = rep.tail_max[i];
        const double lo = rep.tail_min[i];
        double gap = 0.0;
        if (hi != lo) gap = (lo == kNegInf) ? std::numeric_limits<double>::infinity() : hi - lo;
        if (gap > out.worst_gap) {
            out.worst_gap = gap;
            out.worst_x = g.x(i);
        }
    }
    if (out.worst_gap <= out.tolerance) out.limit = std::move(rep.exact);
    return out;
}

GridFunction epsilon_parallel(const GridFunction& f, double eps) {
    const auto& g = f.grid();
    if (!(eps >= g.dx() * (1.0 - 1e-9))) throw std::domain_error("epsilon_parallel: eps below grid spacing");
    const auto steps = static_cast<std::size_t>(std::floor(eps / g.dx() + 1e-9));
    const std::size_t n = f.size();
    const double floor_value = -1.0 / eps;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= steps ? i - steps : 0;
        const std::size_t hi = std::min(n - 1, i + steps);
        double best = kNegInf;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double v = f.is_neg_inf(j) ? kNegInf : f[j] * g.kappa(j);
            best = std::max(best, std::max(v, floor_value));
        }
        out[i] = (best + eps) / g.kappa(i);
    }
    return GridFunction(f.grid_ptr(), std::move(out), Klass::usc);
}

std::vector<DominationEntry> gamma_domination_check(const std::vector<GridFunction>& fs,
                                                    const GridFunction& f,
                                                    const std::vector<double>& eps_list) {
    if (fs.empty()) throw std::domain_error("gamma_domination_check: empty sequence");
    for (const auto& fn : fs) {
        if (!fn.grid().same_lattice(f.grid())) throw std::domain_error("gamma_domination_check: grids differ");
        if (weighted_sup_norm(fn, NormPart::positive) > kUpperBoundCeiling) {
            throw std::domain_error("gamma_domination_check: sequence not bounded above");
        }
    }
    constexpr double tol = 1e-12;
    std::vector<DominationEntry> out;
    for (double eps : eps_list) {
        const GridFunction bar = epsilon_parallel(f, eps);
        for (double radius : f.grid().compact_radii()) {
            const auto [lo, hi] = f.grid().window(radius);
            DominationEntry e;
            e.epsilon = eps;
            e.window = radius;
            std::size_t first_ok = 0;  // 0-based index after the last violation
            for (std::size_t n = 0; n < fs.size(); ++n) {
                for (std::size_t i = lo; i <= hi; ++i) {
                    if (fs[n][i] > bar[i] + tol) {
                        first_ok = n + 1;
                        break;
                    }
                }
            }
            if (first_ok < fs.size()) e.n0 = first_ok + 1;
            double gap = kNegInf;
            for (std::size_t i = lo; i <= hi; ++i) gap = std::max(gap, fs.back()[i] - bar[i]);
            e.worst_gap = gap;
            out.push_back(e);
        }
    }
    return out;
}

namespace {

// Integral of the clamped piecewise-linear interpolant over [a, b] in index units.
double pl_integral(std::span<const double> v, double a, double b) {
    double total = 0.0;
    double c = a;
    while (c < b) {
        double d = std::floor(c) + 1.0;
        if (d - c < 1e-12) d += 1.0;
        d = std::min(d, b);
        total += 0.5 * (d - c) * (sample_clamped(v, c) + sample_clamped(v, d));
        c = d;
    }
    return total;
}

}  // namespace

GridFunction ball_average(const GridFunction& g, double r) {
    if (g.has_neg_inf()) throw std::domain_error("ball_average: function must be finite");
    if (!(r > 0.0)) throw std::domain_error("ball_average: radius must be positive");
    const double s = r / g.grid().dx();
    const auto v = g.raw();
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double c = static_cast<double>(i);
        out[i] = pl_integral(v, c - s, c + s) / (2.0 * s);
    }
    return GridFunction(g.grid_ptr(), std::move(out), g.klass());
}

UscHullResult usc_hull_via_averages(const GridFunction& g, std::vector<double> radii) {
    const double dx = g.grid().dx();
    if (radii.empty()) radii = {2.0 * dx, dx, 0.5 * dx, 0.25 * dx};
    if (radii.size() < 2) throw std::domain_error("usc_hull_via_averages: need at least two radii");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] < radii[k - 1]))) {
            throw std::domain_error("usc_hull_via_averages: radii must be positive and decreasing");
        }
    }
    std::vector<GridFunction> avgs;
    for (double r : radii) avgs.push_back(ball_average(g, r));
    const double r1 = radii[radii.size() - 2];
    const double r2 = radii.back();
    const std::size_t n = g.size();
    std::vector<double> lim(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a1 = avgs[avgs.size() - 2][i];
        const double a2 = avgs.back()[i];
        lim[i] = a2 - r2 * (a1 - a2) / (r1 - r2);
    }
    GridFunction averaged(g.grid_ptr(), lim, Klass::usc);
    std::vector<double> hull(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = lim[i];
        if (i > 0) best = std::max(best, lim[i - 1]);
        if (i + 1 < n) best = std::max(best, lim[i + 1]);
        hull[i] = best;
    }
    return {std::move(averaged), GridFunction(g.grid_ptr(), std::move(hull), Klass::usc)};
}

}  // namespace semilab
