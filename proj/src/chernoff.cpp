#include "semilab/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semilab/funcspace.hpp"

namespace semilab {

Partition Partition::make(double h, double t) {
    if (!(h > 0.0)) throw std::domain_error("partition: h must be positive");
    if (!(t >= 0.0)) throw std::domain_error("partition: t must be nonnegative");
    // j h <= t up to a relative 1e-12, so 3 * 0.1 fits into 0.3
    const double limit = t * (1.0 + 1e-12);
    auto k = static_cast<long>(std::floor(t / h));
    while (static_cast<double>(k + 1) * h <= limit) ++k;
    while (k > 0 && static_cast<double>(k) * h > limit) --k;
    return {h, t, k};
}

Schedule Schedule::dyadic(double t0, int first, int last) {
    if (!(t0 > 0.0) || first < 0 || last < first) throw std::domain_error("schedule: bad dyadic range");
    Schedule s;
    s.mode_ = Mode::dyadic;
    for (int n = first; n <= last; ++n) {
        s.hs_.push_back(std::ldexp(t0, -n));
        s.labels_.push_back(n);
    }
    return s;
}

Schedule Schedule::generic(std::vector<double> hs) {
    if (hs.empty()) throw std::domain_error("schedule: empty");
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(hs[i] > 0.0) || (i > 0 && !(hs[i] < hs[i - 1]))) {
            throw std::domain_error("schedule: widths must be positive and strictly decreasing");
        }
    }
    Schedule s;
    s.hs_ = std::move(hs);
    for (std::size_t i = 0; i < s.hs_.size(); ++i) s.labels_.push_back(static_cast<int>(i + 1));
    return s;
}

GridFunction iterate(const StepOperator& step, const Partition& p, const GridFunction& f) {
    GridFunction u = f;
    for (long j = 0; j < p.k; ++j) u = step(p.h, u);
    return u;
}

ChernoffRun chernoff_run(const StepOperator& step, const GridFunction& f, double t,
                         const Schedule& s, const RunOptions& options) {
    if (s.size() == 0) throw std::domain_error("chernoff_run: empty schedule");
    ChernoffRun run;
    auto& rep = run.report;
    rep.tolerance = options.tolerance;
    const auto& g = f.grid();
    const auto radii = g.compact_radii();
    rep.radii.assign(radii.begin(), radii.end());
    const double big = g.largest_window();
    const bool check_order = s.mode() == Schedule::Mode::dyadic && options.direction != Monotone::none;
    const auto [lo, hi] = g.window(big);

    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        const Partition p = Partition::make(s.widths()[idx], t);
        GridFunction u = f;
        try {
            for (long j = 0; j < p.k; ++j) {
                u = step(p.h, u);
                if (weighted_sup_norm(u) > options.ceiling) {
                    rep.diverged = true;
                    break;
                }
            }
        } catch (const std::domain_error&) {
            // Overflow to +inf/NaN is rejected by GridFunction; treat it as divergence.
            rep.diverged = true;
        }
        if (rep.diverged) break;

        ConvergenceRow row;
        row.n = s.labels()[idx];
        row.h = p.h;
        row.k = p.k;
        row.sup_norm = weighted_sup_norm(u);
        row.lip_const = discrete_lipschitz(u, big);
        row.diffs.assign(rep.radii.size(), 0.0);
        if (!run.iterates.empty()) {
            const GridFunction& prev = run.iterates.back();
            const GridFunction d = u - prev;
            for (std::size_t w = 0; w < rep.radii.size(); ++w) row.diffs[w] = sup_on_window(d, rep.radii[w]);
            if (check_order) {
                double worst = 0.0;
                for (std::size_t i = lo; i <= hi; ++i) {
                    const double v = options.direction == Monotone::nondecreasing ? prev[i] - u[i] : u[i] - prev[i];
                    if (v > 0.0) {
                        ++rep.violation_count;
                        worst = std::max(worst, v);
                    }
                }
                row.monotone_violation = worst;
                rep.max_violation = std::max(rep.max_violation, worst);
            }
        }
        rep.rows.push_back(std::move(row));
        run.iterates.push_back(std::move(u));
    }
    rep.converged = !rep.diverged && rep.rows.size() >= 2 && rep.rows.back().diffs.back() < options.tolerance;
    return run;
}

std::vector<double> equicontinuity_modulus(const std::vector<GridFunction>& fs,
                                           const std::vector<double>& radii) {
    std::vector<double> out(radii.size(), 0.0);
    if (fs.empty()) return out;
    const auto& g = fs.front().grid();
    for (const auto& f : fs) {
        if (!f.grid().same_lattice(g)) throw std::domain_error("equicontinuity_modulus: grids differ");
    }
    for (std::size_t r = 0; r < radii.size(); ++r) {
        const auto steps = static_cast<std::size_t>(std::floor(radii[r] / g.dx() + 1e-9));
        double best = 0.0;
        for (const auto& f : fs) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                for (std::size_t j = i + 1; j <= std::min(f.size() - 1, i + steps); ++j) {
                    best = std::max(best, std::abs(f[i] - f[j]));
                }
            }
        }
        out[r] = best;
    }
    return out;
}

LipschitzTrack lipschitz_bound_track(const StepOperator& step, double r, double t,
                                     const Schedule& s, const GridPtr& grid, double L) {
    if (!(r > 0.0)) throw std::domain_error("lipschitz_bound_track: r must be positive");
    const GridFunction probe = GridFunction::from(grid, [r](double x) { return std::clamp(r * x, -r, r); });
    LipschitzTrack track;
    track.bound = std::exp(L * t) * r;
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        const Partition p = Partition::make(s.widths()[idx], t);
        const GridFunction u = iterate(step, p, probe);
        LipschitzRow row{s.labels()[idx], p.h, weighted_sup_norm(u), discrete_lipschitz(u, grid->span())};
        if (row.lip_const > track.bound * (1.0 + 1e-9) + 1e-12) track.within = false;
        track.rows.push_back(row);
    }
    if (s.size() > 0) {
        const double h = s.widths().back();
        const GridFunction half = iterate(step, Partition::make(h, 0.5 * t), probe);
        const GridFunction full = iterate(step, Partition::make(h, 0.5 * t), half);
        track.half_lip = discrete_lipschitz(half, grid->span());
        track.composed_lip = discrete_lipschitz(full, grid->span());
        const double slack = 1.0 + 1e-9;
        track.composition_ok = track.composed_lip <= std::exp(0.5 * L * t) * track.half_lip * slack + 1e-12 &&
                               track.half_lip <= std::exp(0.5 * L * t) * r * slack + 1e-12;
    }
    return track;
}

}  // namespace semilab
