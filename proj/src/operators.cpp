#include "semilab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "semilab/funcspace.hpp"

namespace semilab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Offsets in lattice index units with probability weights.
struct Transition {
    std::vector<double> offsets;
    std::vector<double> weights;
};

std::shared_ptr<const LatticeKernel> cached_kernel(double up, double down, double t) {
    static std::mutex mutex;
    static std::map<std::tuple<double, double, double>, std::shared_ptr<const LatticeKernel>> cache;
    const auto key = std::make_tuple(up, down, t);
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto k = std::make_shared<const LatticeKernel>(lattice_kernel(up, down, t));
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(k)).first->second;
}

Transition gaussian_transition(const Backend& backend, double a, double b, double t, double dx) {
    Transition tr;
    if (t == 0.0) {
        tr.offsets = {0.0};
        tr.weights = {1.0};
        return tr;
    }
    if (backend.kind == KernelKind::lattice) {
        const auto rates = lattice_rates(a, b, dx);
        const auto k = cached_kernel(rates.up, rates.down, t);
        tr.weights = k->weights;
        tr.offsets.resize(k->weights.size());
        for (std::size_t j = 0; j < tr.offsets.size(); ++j) {
            tr.offsets[j] = static_cast<double>(k->first_offset + static_cast<long>(j));
        }
        return tr;
    }
    const double s = std::sqrt(a * t);
    const auto& q = backend.quad;
    tr.weights = q.weights;
    tr.offsets.resize(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) tr.offsets[j] = (s * q.nodes[j] + b * t) / dx;
    return tr;
}

Transition reference_transition(const ReferenceModel& m, double t, double dx) {
    switch (m.noise) {
        case ReferenceModel::Noise::gaussian:
            return gaussian_transition(m.backend, m.diffusion, 0.0, t, dx);
        case ReferenceModel::Noise::atomic: {
            Transition tr;
            const double s = std::sqrt(t);
            for (std::size_t j = 0; j < m.unit_atoms.atoms.size(); ++j) {
                tr.offsets.push_back(s * m.unit_atoms.atoms[j] / dx);
                tr.weights.push_back(m.unit_atoms.weights[j]);
            }
            return tr;
        }
        case ReferenceModel::Noise::dirac:
            return {{0.0}, {1.0}};
    }
    return {{0.0}, {1.0}};
}

// Fractional lattice index of psi_t(x_i); empty when psi_t is the identity.
std::vector<double> base_indices(const ReferenceModel& m, double t, const WeightedGrid& g) {
    if (m.contraction == 0.0 && m.shift == 0.0) return {};
    std::vector<double> base(g.size());
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = g.index_of(m.psi(t, g.x(i)));
    return base;
}

const std::vector<double>* base_ptr(const std::vector<double>& base) {
    return base.empty() ? nullptr : &base;
}

// Linear-interpolation stencil of a transition at a fixed extra shift, applied on a
// constant-padded copy so that the same arithmetic serves every grid point.
struct Stencil {
    std::vector<long> lo;
    std::vector<double> frac;
    std::vector<double> weights;
    long reach = 0;
};

Stencil make_stencil(const Transition& tr, double shift) {
    Stencil st;
    st.weights = tr.weights;
    for (double off : tr.offsets) {
        const double x = off + shift;
        const double r = std::nearbyint(x);
        long lo;
        double s;
        if (std::abs(x - r) < 1e-9) {
            lo = static_cast<long>(r);
            s = 0.0;
        } else {
            lo = static_cast<long>(std::floor(x));
            s = x - std::floor(x);
        }
        st.lo.push_back(lo);
        st.frac.push_back(s);
        st.reach = std::max(st.reach, std::abs(lo) + 1);
    }
    return st;
}

std::vector<double> padded(std::span<const double> v, long pad) {
    std::vector<double> p(v.size() + 2 * static_cast<std::size_t>(pad));
    std::fill(p.begin(), p.begin() + pad, v.front());
    std::copy(v.begin(), v.end(), p.begin() + pad);
    std::fill(p.begin() + pad + static_cast<long>(v.size()), p.end(), v.back());
    return p;
}

// E v(psi_t(x_i) + Y + shift) for every grid point i (shift in index units).
std::vector<double> expect_all(std::span<const double> v, const Transition& tr, double shift,
                               const std::vector<double>* base) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    if (base) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < tr.weights.size(); ++j) {
                acc += tr.weights[j] * sample_clamped(v, (*base)[i] + tr.offsets[j] + shift);
            }
            out[i] = acc;
        }
        return out;
    }
    const Stencil st = make_stencil(tr, shift);
    const long pad = st.reach;
    const auto p = padded(v, pad);
    for (std::size_t i = 0; i < n; ++i) {
        const double* c = p.data() + pad + static_cast<long>(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < st.weights.size(); ++j) {
            const double s = st.frac[j];
            acc += st.weights[j] * ((1.0 - s) * c[st.lo[j]] + s * c[st.lo[j] + 1]);
        }
        out[i] = acc;
    }
    return out;
}

void require_continuous(const GridFunction& f, const char* who) {
    if (f.klass() != Klass::continuous || f.has_neg_inf()) {
        throw std::domain_error(std::string(who) + ": function must be continuous and finite");
    }
}

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(who) + ": t must be >= 0");
}

}  // namespace

ReferenceModel ReferenceModel::brownian(double diffusion, Backend backend) {
    ReferenceModel m;
    m.diffusion = diffusion;
    m.backend = std::move(backend);
    return m;
}

ReferenceModel ReferenceModel::transport(double speed) {
    ReferenceModel m;
    m.noise = Noise::dirac;
    m.shift = speed;
    return m;
}

double ReferenceModel::psi(double t, double x) const {
    return std::exp(-contraction * t) * x + shift * t;
}

double ReferenceModel::measured_defect(const WeightedGrid& grid, double t) const {
    if (!(t > 0.0)) return 0.0;
    double worst = 0.0;
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i + 1 < n; i += std::max<std::size_t>(1, n / 64)) {
        for (std::size_t j : {i + 1, n - 1}) {
            if (j <= i) continue;
            const double x = grid.x(i), y = grid.x(j);
            const double d = std::abs(psi(t, x) - psi(t, y) - (x - y));
            worst = std::max(worst, d / (t * std::abs(x - y)));
        }
    }
    return worst;
}

AtomicMeasure ReferenceModel::mu(double t) const {
    switch (noise) {
        case Noise::gaussian: return discretize(GaussianMeasure{0.0, diffusion * t}, backend.quad);
        case Noise::atomic: {
            AtomicMeasure a = unit_atoms;
            for (double& y : a.atoms) y *= std::sqrt(t);
            return a;
        }
        case Noise::dirac: return AtomicMeasure{{0.0}, {1.0}};
    }
    return AtomicMeasure{{0.0}, {1.0}};
}

void ReferenceModel::validate() const {
    if (!(contraction >= 0.0) || !std::isfinite(shift)) {
        throw std::domain_error("reference model: contraction must be >= 0");
    }
    if (noise == Noise::gaussian && !(diffusion >= 0.0)) {
        throw std::domain_error("reference model: diffusion must be >= 0");
    }
    if (noise == Noise::atomic) {
        if (unit_atoms.atoms.empty() || unit_atoms.atoms.size() != unit_atoms.weights.size()) {
            throw std::domain_error("reference model: atomic noise needs matching atoms and weights");
        }
        if (std::abs(unit_atoms.mass() - 1.0) > 1e-12) {
            throw std::domain_error("reference model: atomic weights must sum to 1");
        }
        double mean = 0.0;
        for (std::size_t i = 0; i < unit_atoms.atoms.size(); ++i) {
            mean += unit_atoms.weights[i] * unit_atoms.atoms[i];
        }
        if (std::abs(mean) > 1e-12) throw std::domain_error("reference model: atomic noise must be centred");
    }
}

GridFunction ReferenceModel::generator_form(const GridFunction& f) const {
    double var_rate = 0.0;
    switch (noise) {
        case Noise::gaussian: var_rate = diffusion; break;
        case Noise::atomic: var_rate = unit_atoms.moment(2.0); break;
        case Noise::dirac: var_rate = 0.0; break;
    }
    const GridFunction d1 = fd_derivative(f, 1);
    const GridFunction d2 = fd_derivative(f, 2);
    const auto& g = f.grid();
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.5 * var_rate * d2[i] + (shift - contraction * g.x(i)) * d1[i];
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

GridFunction reference_step(const ReferenceModel& model, double t, const GridFunction& f) {
    require_time(t, "reference_step");
    require_continuous(f, "reference_step");
    if (t == 0.0) return f;
    const auto& g = f.grid();
    const Transition tr = reference_transition(model, t, g.dx());
    const auto base = base_indices(model, t, g);
    return GridFunction(f.grid_ptr(), expect_all(f.raw(), tr, 0.0, base_ptr(base)));
}

GridFunction control_step(const ControlCost& cost, const Backend& backend, double t,
                          const GridFunction& f) {
    require_time(t, "control_step");
    require_continuous(f, "control_step");
    if (t == 0.0) return f;
    const double dx = f.grid().dx();
    std::vector<double> out(f.size(), -kInf);
    for (const auto& c : cost.controls()) {
        const Transition tr = gaussian_transition(backend, c.a, c.b, t, dx);
        const double pen = c.cost * t;
        const auto e = expect_all(f.raw(), tr, 0.0, nullptr);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], e[i] - pen);
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

GridFunction drift_step(const ReferenceModel& model, const PhiCost& cost, double t,
                        const GridFunction& f, const std::vector<double>& b_grid) {
    require_time(t, "drift_step");
    require_continuous(f, "drift_step");
    if (b_grid.empty()) throw std::domain_error("drift_step: empty velocity grid");
    if (t == 0.0) return f;
    const auto& g = f.grid();
    const Transition tr = reference_transition(model, t, g.dx());
    const auto base = base_indices(model, t, g);
    std::vector<double> out(f.size(), -kInf);
    bool feasible = false;
    for (double b : b_grid) {
        const double z = b * t;
        const double pen = cost.phi_t(std::abs(z), t);
        if (!std::isfinite(pen)) continue;
        feasible = true;
        const auto e = expect_all(f.raw(), tr, z / g.dx(), base_ptr(base));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], e[i] - pen);
    }
    if (!feasible) throw std::domain_error("drift_step: no velocity with finite cost");
    return GridFunction(f.grid_ptr(), std::move(out));
}

namespace {

// Multipliers for the Lagrangian scan: a log-spaced sweep plus the slopes of
// V -> phi_t(V^{1/p}) between consecutive budgets. For phi(v) = v^2/2 with p = 2
// the slope is exactly 1/(2t) and is inserted verbatim.
std::vector<double> multipliers(const PhiCost& cost, double t, std::vector<double> budgets) {
    const double p = cost.p();
    std::vector<double> lambdas;
    for (int k = 0; k < 64; ++k) lambdas.push_back(std::pow(t, 1.0 - p) * std::pow(10.0, -3.0 + 6.0 * k / 63.0));
    std::sort(budgets.begin(), budgets.end());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    for (std::size_t k = 0; k + 1 < budgets.size(); ++k) {
        const double w1 = budgets[k], w2 = budgets[k + 1];
        if (w1 < 0.0) throw std::domain_error("wasserstein_step: negative budget");
        const double f1 = cost.phi_t(w1, t), f2 = cost.phi_t(w2, t);
        const double dv = std::pow(w2, p) - std::pow(w1, p);
        if (std::isfinite(f1) && std::isfinite(f2) && dv > 0.0) lambdas.push_back(std::max(0.0, (f2 - f1) / dv));
    }
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<double> out;
    for (double l : lambdas) {
        if (out.empty() || l > out.back() * (1.0 + 1e-9)) out.push_back(l);
    }
    if (cost.kind() == PhiCost::Kind::quadratic && p == 2.0) {
        const double exact = 1.0 / (2.0 * t);
        std::erase_if(out, [exact](double l) { return std::abs(l - exact) <= 1e-9 * exact; });
        out.insert(std::upper_bound(out.begin(), out.end(), exact), exact);
    }
    return out;
}

}  // namespace

GridFunction wasserstein_step(const ReferenceModel& model, const PhiCost& cost, double t,
                              const GridFunction& f, const std::vector<double>& budget_grid,
                              const std::vector<double>& displacement_grid) {
    require_time(t, "wasserstein_step");
    require_continuous(f, "wasserstein_step");
    if (budget_grid.empty()) throw std::domain_error("wasserstein_step: empty budget grid");
    if (displacement_grid.empty()) throw std::domain_error("wasserstein_step: empty displacement grid");
    if (t == 0.0) return f;

    const auto& g = f.grid();
    const double dx = g.dx();
    const double p = cost.p();
    const auto v = f.raw();
    const std::size_t n = f.size();
    const Transition tr = reference_transition(model, t, dx);
    const auto base = base_indices(model, t, g);
    const auto cost_of = [p](double z) { return p == 2.0 ? z * z : std::pow(std::abs(z), p); };
    const auto root = [p](double V) { return p == 2.0 ? std::sqrt(V) : std::pow(V, 1.0 / p); };

    // Displacements ordered by magnitude so ties resolve to the smallest move.
    std::vector<double> zs = displacement_grid;
    std::stable_sort(zs.begin(), zs.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    std::vector<double> cz(zs.size());
    std::vector<std::vector<double>> shifted(zs.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < zs.size(); ++k) {
        cz[k] = cost_of(zs[k]);
        const double s = zs[k] / dx;
        for (std::size_t j = 0; j < n; ++j) shifted[k][j] = sample_clamped(v, static_cast<double>(j) + s);
    }

    std::vector<double> best = expect_all(v, tr, 0.0, base_ptr(base));
    std::vector<double> Fv(n), Cv(n);
    for (double lam : multipliers(cost, t, budget_grid)) {
        // Node-wise maximiser of f(u + z) - lambda |z|^p, then averaged over the atoms.
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t arg = 0;
            double top = shifted[0][j] - lam * cz[0];
            for (std::size_t k = 1; k < zs.size(); ++k) {
                const double val = shifted[k][j] - lam * cz[k];
                if (val > top) {
                    top = val;
                    arg = k;
                }
            }
            Fv[j] = shifted[arg][j];
            Cv[j] = cz[arg];
        }
        const auto F = expect_all(Fv, tr, 0.0, base_ptr(base));
        const auto V = expect_all(Cv, tr, 0.0, base_ptr(base));
        for (std::size_t i = 0; i < n; ++i) {
            const double pen = cost.phi_t(root(std::max(V[i], 0.0)), t);
            if (std::isfinite(pen)) best[i] = std::max(best[i], F[i] - pen);
        }
    }
    // Common displacement of all atoms: the drift-step family.
    for (double z : displacement_grid) {
        const double pen = cost.phi_t(std::abs(z), t);
        if (!std::isfinite(pen)) continue;
        const auto e = expect_all(v, tr, z / dx, base_ptr(base));
        for (std::size_t i = 0; i < n; ++i) best[i] = std::max(best[i], e[i] - pen);
    }
    return GridFunction(f.grid_ptr(), std::move(best));
}

GridFunction entropic_exact(double t, const GridFunction& f, const Backend& backend, double theta) {
    require_time(t, "entropic_exact");
    require_continuous(f, "entropic_exact");
    if (!(theta > 0.0)) throw std::domain_error("entropic_exact: theta must be positive");
    if (t == 0.0) return f;
    const Transition tr = gaussian_transition(backend, 1.0, 0.0, t, f.grid().dx());
    const Stencil st = make_stencil(tr, 0.0);
    const auto p = padded(f.raw(), st.reach);
    std::vector<double> out(f.size());
    std::vector<double> buf(st.weights.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double* c = p.data() + st.reach + static_cast<long>(i);
        double m = -kInf;
        for (std::size_t j = 0; j < buf.size(); ++j) {
            const double s = st.frac[j];
            buf[j] = theta * ((1.0 - s) * c[st.lo[j]] + s * c[st.lo[j] + 1]);
            m = std::max(m, buf[j]);
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < buf.size(); ++j) acc += st.weights[j] * std::exp(buf[j] - m);
        out[i] = (m + std::log(acc)) / theta;
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

namespace {

bool centred(const Control& c, double dx, HjbScheme scheme) {
    return scheme == HjbScheme::automatic && c.a / dx >= std::abs(c.b);
}

}  // namespace

double hjb_stable_dt(const ControlCost& cost, double dx, HjbScheme scheme) {
    double rate = 0.0;
    for (const auto& c : cost.controls()) {
        const double r = c.a / (dx * dx) + (centred(c, dx, scheme) ? 0.0 : std::abs(c.b) / dx);
        rate = std::max(rate, r);
    }
    return rate > 0.0 ? 1.0 / rate : kInf;
}

GridFunction hjb_fd_oracle(const ControlCost& cost, const GridFunction& f, double t, double dt,
                           HjbScheme scheme) {
    require_time(t, "hjb_fd_oracle");
    require_continuous(f, "hjb_fd_oracle");
    if (!(dt > 0.0)) throw std::domain_error("hjb_fd_oracle: dt must be positive");
    const double dx = f.grid().dx();
    if (dt > hjb_stable_dt(cost, dx, scheme) * (1.0 + 1e-12)) {
        throw std::domain_error("hjb_fd_oracle: CFL condition violated");
    }
    if (t == 0.0) return f;
    const auto steps = static_cast<long>(std::ceil(t / dt - 1e-12));
    const double h = t / static_cast<double>(steps);
    const std::size_t n = f.size();
    std::vector<double> u(f.raw().begin(), f.raw().end());
    std::vector<double> next(n);
    const double dx2 = dx * dx;
    for (long s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double um = u[i > 0 ? i - 1 : 0];
            const double up = u[i + 1 < n ? i + 1 : n - 1];
            const double d2 = (up - 2.0 * u[i] + um) / dx2;
            double H = -kInf;
            for (const auto& c : cost.controls()) {
                double drift;
                if (centred(c, dx, scheme)) {
                    drift = c.b * (up - um) / (2.0 * dx);
                } else {
                    drift = std::max(c.b, 0.0) * (up - u[i]) / dx + std::min(c.b, 0.0) * (u[i] - um) / dx;
                }
                H = std::max(H, 0.5 * c.a * d2 + drift - c.cost);
            }
            next[i] = u[i] + h * H;
        }
        u.swap(next);
    }
    return GridFunction(f.grid_ptr(), std::move(u));
}

std::vector<double> symmetric_grid(double b_max, double db) {
    if (!(b_max >= 0.0) || !(db > 0.0)) throw std::domain_error("symmetric_grid: bad parameters");
    const auto m = static_cast<long>(std::llround(b_max / db));
    std::vector<double> out;
    for (long k = -m; k <= m; ++k) out.push_back(static_cast<double>(k) * db);
    return out;
}

std::vector<double> WassersteinGrids::displacements(double t, double dx) const {
    std::vector<double> z;
    if (lattice_cells > 0) {
        for (long k = -lattice_cells; k <= lattice_cells; ++k) z.push_back(static_cast<double>(k) * dx);
    } else {
        for (double b : velocities) z.push_back(b * t);
    }
    return z;
}

std::vector<double> WassersteinGrids::budgets(double t, double dx) const {
    std::vector<double> w{0.0};
    for (double z : displacements(t, dx)) w.push_back(std::abs(z));
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

StepOperator make_reference_step(ReferenceModel model) {
    model.validate();
    return [model](double t, const GridFunction& f) { return reference_step(model, t, f); };
}

StepOperator make_control_step(ControlCost cost, Backend backend) {
    return [cost, backend](double t, const GridFunction& f) { return control_step(cost, backend, t, f); };
}

StepOperator make_drift_step(ReferenceModel model, PhiCost cost, std::vector<double> velocities) {
    model.validate();
    return [model, cost, velocities](double t, const GridFunction& f) {
        return drift_step(model, cost, t, f, velocities);
    };
}

StepOperator make_wasserstein_step(ReferenceModel model, PhiCost cost, WassersteinGrids grids) {
    model.validate();
    return [model, cost, grids](double t, const GridFunction& f) {
        const double dx = f.grid().dx();
        return wasserstein_step(model, cost, t, f, grids.budgets(t, dx), grids.displacements(t, dx));
    };
}

StepOperator make_entropic_step(Backend backend, double theta) {
    return [backend, theta](double t, const GridFunction& f) { return entropic_exact(t, f, backend, theta); };
}

StepOperator make_hjb_step(ControlCost cost, double dt, HjbScheme scheme) {
    return [cost, dt, scheme](double t, const GridFunction& f) {
        return hjb_fd_oracle(cost, f, t, dt, scheme);
    };
}

StepOperator make_identity_step() {
    return [](double, const GridFunction& f) { return f; };
}

}  // namespace semilab
