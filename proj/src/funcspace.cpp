#include "semilab/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semilab {

double weighted_sup_norm(const GridFunction& f, NormPart part) {
    const auto& g = f.grid();
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.is_neg_inf(i)) {
            if (part == NormPart::full) {
                throw std::domain_error("full weighted norm of a function containing -inf");
            }
            continue;
        }
        const double v = f.raw()[i];
        const double a = (part == NormPart::full) ? std::abs(v) : std::max(v, 0.0);
        best = std::max(best, a * g.kappa(i));
    }
    return best;
}

double sup_on_window(const GridFunction& f, double radius) {
    const auto [lo, hi] = f.grid().window(radius);
    double best = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) best = std::max(best, std::abs(f[i]));
    return best;
}

double max_difference_on_window(const GridFunction& a, const GridFunction& b, double radius) {
    if (!a.grid().same_lattice(b.grid())) throw std::domain_error("different grids");
    const auto [lo, hi] = a.grid().window(radius);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) best = std::max(best, a[i] - b[i]);
    return best;
}

double discrete_lipschitz(const GridFunction& f, double radius) {
    const auto [lo, hi] = f.grid().window(radius);
    double best = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        best = std::max(best, std::abs(f[i + 1] - f[i]));
    }
    return best / f.grid().dx();
}

MixedConvergenceReport mixed_convergence_report(const std::vector<GridFunction>& fs,
                                                const GridFunction& f, double tolerance) {
    if (fs.empty()) throw std::domain_error("mixed convergence: empty sequence");
    MixedConvergenceReport rep;
    for (const auto& fn : fs) {
        if (!fn.grid().same_lattice(f.grid())) throw std::domain_error("mixed convergence: grids differ");
        rep.kappa_bound = std::max(rep.kappa_bound, weighted_sup_norm(fn));
    }
    const auto radii = f.grid().compact_radii();
    rep.radii.assign(radii.begin(), radii.end());
    const std::size_t tail_start = (2 * fs.size()) / 3;
    for (double r : rep.radii) {
        double tail = 0.0;
        for (std::size_t n = tail_start; n < fs.size(); ++n) {
            tail = std::max(tail, sup_on_window(fs[n] - f, r));
        }
        rep.tail_errors.push_back(tail);
        rep.final_errors.push_back(sup_on_window(fs.back() - f, r));
    }
    rep.converged = std::isfinite(rep.kappa_bound) &&
                    std::all_of(rep.tail_errors.begin(), rep.tail_errors.end(),
                                [&](double e) { return e <= tolerance; });
    return rep;
}

namespace {

double bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

}  // namespace

Mollifier::Mollifier(int index, std::size_t table_points) : index_(index) {
    if (index <= 0) throw std::domain_error("mollifier index must be positive");
    if (table_points < 3 || table_points % 2 == 0) {
        throw std::domain_error("mollifier table needs an odd point count >= 3");
    }
    table_.resize(table_points);
    const double h = 2.0 / static_cast<double>(table_points - 1);
    double mass = 0.0;
    for (std::size_t k = 0; k < table_points; ++k) {
        table_[k] = bump(-1.0 + h * static_cast<double>(k));
        mass += (k == 0 || k + 1 == table_points ? 0.5 : 1.0) * table_[k] * h;
    }
    for (double& v : table_) v /= mass;
}

double Mollifier::profile(double y) const {
    if (std::abs(y) >= 1.0) return 0.0;
    const double idx = (y + 1.0) / 2.0 * static_cast<double>(table_.size() - 1);
    return sample_clamped(table_, idx);
}

double Mollifier::profile_mass() const {
    const double h = 2.0 / static_cast<double>(table_.size() - 1);
    double mass = 0.0;
    for (std::size_t k = 0; k < table_.size(); ++k) {
        mass += (k == 0 || k + 1 == table_.size() ? 0.5 : 1.0) * table_[k] * h;
    }
    return mass;
}

std::vector<double> Mollifier::lattice_weights(double dx) const {
    const double r = radius();
    const auto K = static_cast<long>(std::floor(r / dx + 1e-9));
    std::vector<double> w(static_cast<std::size_t>(2 * K + 1));
    double total = 0.0;
    for (long k = -K; k <= K; ++k) {
        // eta_n(y) = n * eta(n y); trapezoid weights on the lattice (endpoints vanish).
        const double v = index_ * profile(index_ * static_cast<double>(k) * dx) * dx;
        w[static_cast<std::size_t>(k + K)] = v;
        total += v;
    }
    if (total <= 0.0) {
        // Kernel narrower than one spacing: the discrete convolution is the identity.
        std::fill(w.begin(), w.end(), 0.0);
        w[static_cast<std::size_t>(K)] = 1.0;
        return w;
    }
    for (double& v : w) v /= total;
    return w;
}

GridFunction mollify(const GridFunction& f, const Mollifier& m) {
    if (f.klass() != Klass::continuous) throw std::domain_error("mollify: function must be continuous");
    const auto& g = f.grid();
    if (m.radius() > g.span()) throw std::domain_error("mollify: kernel wider than grid span");
    const auto w = m.lattice_weights(g.dx());
    const long K = static_cast<long>(w.size() / 2);
    const long n = static_cast<long>(f.size());
    const auto v = f.raw();
    std::vector<double> out(f.size());
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long k = -K; k <= K; ++k) {
            const long j = std::clamp(i - k, 0L, n - 1);
            acc += w[static_cast<std::size_t>(k + K)] * v[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

double Cutoff::shape(int index, double x) {
    const double a = std::abs(x) - index;
    if (a <= 0.0) return 1.0;
    if (a >= 1.0) return 0.0;
    // Smooth transition 1 -> 0 on (0, 1) built from exp(-1/s) pieces.
    const auto e = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    return e(1.0 - a) / (e(1.0 - a) + e(a));
}

Cutoff::Cutoff(int index, const GridPtr& grid)
    : index_(index),
      values_(GridFunction::from(grid, [index](double x) { return shape(index, x); })) {
    if (index <= 0) throw std::domain_error("cutoff index must be positive");
}

GridFunction truncate(const GridFunction& f, const Cutoff& c) {
    const auto& phi = c.values();
    if (!f.grid().same_lattice(phi.grid())) throw std::domain_error("truncate: grids differ");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double p = phi[i];
        out[i] = (p == 0.0) ? 0.0 : f[i] * p;
    }
    return GridFunction(f.grid_ptr(), std::move(out), f.klass());
}

GridFunction fd_derivative(const GridFunction& f, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("fd_derivative: order must be 1 or 2");
    if (f.klass() != Klass::continuous) throw std::domain_error("fd_derivative: function must be continuous");
    const std::size_t n = f.size();
    const double h = f.grid().dx();
    const auto v = f.raw();
    std::vector<double> d(n);
    if (order == 1) {
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    } else {
        const double h2 = h * h;
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    }
    return GridFunction(f.grid_ptr(), std::move(d));
}

}  // namespace semilab
