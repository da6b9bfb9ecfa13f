#include "semilab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "semilab/funcspace.hpp"

namespace semilab {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t key_of(double t, const GridFunction& f) {
    std::uint64_t h = 1469598103934665603ULL;
    h = fnv1a(&t, sizeof t, h);
    const auto raw = f.raw();
    h = fnv1a(raw.data(), raw.size_bytes(), h);
    const auto flags = f.neg_inf_flags();
    return fnv1a(flags.data(), flags.size_bytes(), h);
}

}  // namespace

struct SemigroupEval::Cache {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, std::vector<std::tuple<double, GridFunction, GridFunction>>> entries;
};

SemigroupEval::SemigroupEval(std::string name, Fn fn)
    : name_(std::move(name)), fn_(std::move(fn)), cache_(std::make_shared<Cache>()) {}

GridFunction SemigroupEval::operator()(double t, const GridFunction& f) const {
    if (!(t >= 0.0)) throw std::domain_error("semigroup evaluator: t must be >= 0");
    if (t == 0.0) return f;
    const auto key = key_of(t, f);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (auto it = cache_->entries.find(key); it != cache_->entries.end()) {
            for (const auto& [tt, in, out] : it->second) {
                if (tt == t && in.identical(f)) return out;
            }
        }
    }
    GridFunction out = fn_(t, f);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->entries[key].emplace_back(t, f, out);
    return out;
}

std::size_t SemigroupEval::cache_size() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    std::size_t n = 0;
    for (const auto& [k, v] : cache_->entries) n += v.size();
    return n;
}

SemigroupEval SemigroupEval::entropic(Backend backend, double theta) {
    return SemigroupEval("entropic", [backend, theta](double t, const GridFunction& f) {
        return entropic_exact(t, f, backend, theta);
    });
}

SemigroupEval SemigroupEval::heat(double a, Backend backend) {
    auto model = ReferenceModel::brownian(a, std::move(backend));
    return SemigroupEval("heat", [model](double t, const GridFunction& f) { return reference_step(model, t, f); });
}

SemigroupEval SemigroupEval::hjb(ControlCost cost, double dt, HjbScheme scheme) {
    return SemigroupEval("hjb", [cost, dt, scheme](double t, const GridFunction& f) {
        return hjb_fd_oracle(cost, f, t, dt, scheme);
    });
}

SemigroupEval SemigroupEval::chernoff(StepOperator step, double h_max, std::string name) {
    if (!(h_max > 0.0)) throw std::domain_error("chernoff evaluator: h_max must be positive");
    return SemigroupEval(std::move(name), [step, h_max](double t, const GridFunction& f) {
        const auto k = static_cast<long>(std::ceil(t / h_max - 1e-12));
        const double h = t / static_cast<double>(k);
        GridFunction u = f;
        for (long j = 0; j < k; ++j) u = step(h, u);
        return u;
    });
}

SemigroupEval SemigroupEval::identity() {
    return SemigroupEval("identity", [](double, const GridFunction& f) { return f; });
}

SemigroupEval SemigroupEval::shift(double speed) {
    const auto model = ReferenceModel::transport(speed);
    return SemigroupEval("shift", [model](double t, const GridFunction& f) { return reference_step(model, t, f); });
}

std::vector<double> default_h_schedule(double t0) {
    std::vector<double> hs;
    for (int k = 3; k <= 10; ++k) hs.push_back(std::ldexp(t0, -k));
    return hs;
}

WindowSchedule parabolic_windows(const WeightedGrid& grid, const std::vector<double>& hs) {
    std::vector<double> r;
    for (double h : hs) r.push_back(std::max(grid.dx(), std::sqrt(h)));
    return WindowSchedule(std::move(r));
}

GridFunction difference_quotient(const SemigroupEval& S, const GridFunction& f, double h) {
    if (!(h > 0.0)) throw std::domain_error("difference_quotient: h must be positive");
    return (1.0 / h) * (S(h, f) - f);
}

LipschitzVerdict lipschitz_membership(const SemigroupEval& S, const GridFunction& f, Side side,
                                      const std::vector<double>& h_list) {
    if (h_list.empty()) throw std::domain_error("lipschitz_membership: empty h list");
    LipschitzVerdict v;
    v.side = side;
    v.hs = h_list;
    std::size_t i_max = 0, i_min = 0;
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        const double h = h_list[k];
        if (!(h > 0.0)) throw std::domain_error("lipschitz_membership: h must be positive");
        double c = 0.0;
        if (side == Side::upper) {
            c = weighted_sup_norm(S(h, f) - f, NormPart::positive) / h;
        } else {
            c = weighted_sup_norm(S(h, f) - f) / h;
            if (side == Side::symmetric) {
                const GridFunction g = -1.0 * f;
                c = std::max(c, weighted_sup_norm(S(h, g) - g) / h);
            }
        }
        v.c_values.push_back(c);
        if (h > h_list[i_max]) i_max = k;
        if (h < h_list[i_min]) i_min = k;
    }
    v.h0 = h_list[i_max];
    const auto [lo, hi] = std::minmax_element(v.c_values.begin(), v.c_values.end());
    v.c_estimate = *hi;
    if (*hi == 0.0) {
        v.member = Membership::yes;
    } else if (*lo > 0.0 && *hi / *lo <= 2.0) {
        v.member = Membership::yes;
    } else if (v.c_values[i_min] >= 4.0 * v.c_values[i_max]) {
        v.member = Membership::no;
    } else {
        v.member = Membership::inconclusive;
    }
    return v;
}

GridFunction gamma_generator(const SemigroupEval& S, const GridFunction& f, const std::vector<double>& hs,
                             std::optional<WindowSchedule> w, bool override_check) {
    if (hs.empty()) throw std::domain_error("gamma_generator: empty h schedule");
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (!(hs[k] > 0.0) || (k > 0 && !(hs[k] < hs[k - 1]))) {
            throw std::domain_error("gamma_generator: h schedule must be positive and decreasing");
        }
    }
    if (!override_check) {
        const auto verdict = lipschitz_membership(S, f, Side::upper, hs);
        if (verdict.member == Membership::no) {
            throw std::domain_error("gamma_generator: difference quotients unbounded above");
        }
    }
    std::vector<GridFunction> qs;
    for (double h : hs) qs.push_back(difference_quotient(S, f, h));
    const WindowSchedule windows = w ? *w : parabolic_windows(f.grid(), hs);
    return gamma_limsup(qs, windows);
}

GeneratorModel GeneratorModel::control(ControlCost cost) {
    GeneratorModel m;
    m.kind = Kind::control;
    m.controls = std::move(cost);
    return m;
}

GeneratorModel GeneratorModel::perturbation(ReferenceModel reference, PhiCost phi) {
    GeneratorModel m;
    m.kind = Kind::perturbation;
    m.reference = std::move(reference);
    m.phi = std::move(phi);
    return m;
}

GeneratorModel GeneratorModel::entropic(double theta) {
    GeneratorModel m;
    m.kind = Kind::entropic;
    m.theta = theta;
    return m;
}

GridFunction smooth_generator_oracle(const GridFunction& f, const GeneratorModel& model) {
    const GridFunction d1 = fd_derivative(f, 1);
    const GridFunction d2 = fd_derivative(f, 2);
    std::vector<double> out(f.size());
    switch (model.kind) {
        case GeneratorModel::Kind::control: {
            if (!model.controls) throw std::domain_error("generator oracle: control model without controls");
            for (std::size_t i = 0; i < out.size(); ++i) {
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& c : model.controls->controls()) {
                    best = std::max(best, 0.5 * c.a * d2[i] + c.b * d1[i] - c.cost);
                }
                out[i] = best;
            }
            break;
        }
        case GeneratorModel::Kind::perturbation: {
            if (!model.reference || !model.phi) {
                throw std::domain_error("generator oracle: no reference generator form configured");
            }
            const GridFunction r = model.reference->generator_form(f);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] + model.phi->conjugate(std::abs(d1[i]));
            break;
        }
        case GeneratorModel::Kind::entropic:
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] = 0.5 * d2[i] + 0.5 * model.theta * d1[i] * d1[i];
            }
            break;
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

PipelineResult mollified_generator_pipeline(const SemigroupEval& S, const GridFunction& f,
                                            const std::vector<int>& mollifier_sizes,
                                            const GeneratorModel& model, double commutator_time,
                                            double commutator_tolerance) {
    if (mollifier_sizes.empty()) throw std::domain_error("pipeline: no mollifier sizes");
    const auto& g = f.grid();
    std::vector<GridFunction> seq;
    std::vector<double> radii;
    for (int n : mollifier_sizes) {
        seq.push_back(smooth_generator_oracle(mollify(f, Mollifier(n)), model));
        radii.push_back(std::max(g.dx(), 1.0 / n));
    }
    GridFunction limit = gamma_limsup(seq, WindowSchedule(radii));

    // Translation commutator on the largest compact window, shifts of whole cells.
    double worst = 0.0;
    const GridFunction base = S(commutator_time, f);
    const auto [lo, hi] = g.window(g.largest_window());
    for (long m : {1L, 5L, 10L}) {
        for (long sgn : {-1L, 1L}) {
            const GridFunction a = S(commutator_time, translate(f, sgn * m));
            const GridFunction b = translate(base, sgn * m);
            for (std::size_t i = lo; i <= hi; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        }
    }
    PipelineResult res{std::move(seq), std::move(limit), worst, commutator_tolerance, worst <= commutator_tolerance};
    return res;
}

ComparisonReport comparison_harness(const SemigroupEval& S_small, const SemigroupEval& S_big,
                                    const std::vector<GridFunction>& probes, const std::vector<double>& times,
                                    double tolerance) {
    ComparisonReport rep;
    rep.tolerance = tolerance;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        const auto& f = probes[p];
        const auto [lo, hi] = f.grid().window(f.grid().largest_window());
        for (double t : times) {
            const GridFunction a = S_small(t, f);
            const GridFunction b = S_big(t, f);
            if (!a.grid().same_lattice(b.grid())) throw std::domain_error("comparison_harness: grids differ");
            double worst = 0.0;
            for (std::size_t i = lo; i <= hi; ++i) worst = std::max(worst, a[i] - b[i]);
            rep.rows.push_back({p, t, worst});
            rep.max_violation = std::max(rep.max_violation, worst);
        }
    }
    rep.ordered = rep.max_violation <= tolerance;
    return rep;
}

std::vector<double> uniform_times(double T, int steps) {
    if (!(T > 0.0) || steps < 1) throw std::domain_error("uniform_times: bad lattice");
    std::vector<double> ts;
    for (int k = 0; k <= steps; ++k) ts.push_back(T * k / steps);
    return ts;
}

std::vector<GridFunction> perturbed_orbit(const SemigroupEval& S, const GridFunction& f,
                                          const std::vector<double>& times, double rate) {
    std::vector<GridFunction> u;
    for (double t : times) u.push_back(S(t, f) + rate * t);
    return u;
}

SupersolutionReport supersolution_check(const SemigroupEval& S, const std::vector<double>& times,
                                        const std::vector<GridFunction>& u, const GridFunction& f,
                                        const SupersolutionOptions& options) {
    if (times.size() < 3 || u.size() != times.size()) {
        throw std::domain_error("supersolution_check: need >= 3 times with matching family");
    }
    if (times.front() != 0.0) throw std::domain_error("supersolution_check: time lattice must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw std::domain_error("supersolution_check: times must increase");
    }
    const auto& g = f.grid();
    const auto [lo, hi] = g.window(g.largest_window());
    const std::vector<double> hs = options.hs.empty() ? default_h_schedule(times.back()) : options.hs;
    const WindowSchedule windows =
        options.windows ? *options.windows : WindowSchedule(std::vector<double>(hs.size(), g.dx()));

    SupersolutionReport rep;
    rep.initial_gap = max_difference_on_window(f, u.front(), g.largest_window());
    rep.initial_ok = rep.initial_gap <= options.conclusion_tolerance;

    double neg = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times[k + 1] - times[k];
        for (std::size_t i = lo; i <= hi; ++i) neg = std::max(neg, -(u[k + 1][i] - u[k][i]) / dt);
    }
    rep.comp_negative_part = neg;
    rep.comp_ok = neg <= options.quotient_ceiling;

    double residual = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 2 < times.size(); ++k) {
        const double h1 = times[k + 1] - times[k];
        const double h2 = times[k + 2] - times[k + 1];
        const double c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
        const double c1 = (h1 + h2) / (h1 * h2);
        const double c2 = -h1 / (h2 * (h1 + h2));
        const GridFunction A = gamma_generator(S, u[k], hs, windows, true);
        for (std::size_t i = lo; i <= hi; ++i) {
            const double dudt = c0 * u[k][i] + c1 * u[k + 1][i] + c2 * u[k + 2][i];
            residual = std::max(residual, A[i] - dudt);
        }
    }
    rep.comp2_residual = residual;
    rep.comp2_ok = residual <= options.comp2_tolerance;

    double viol = -std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < times.size(); ++k) {
        const GridFunction s = S(times[k], f);
        for (std::size_t i = lo; i <= hi; ++i) {
            viol = std::max(viol, s[i] - u[k][i]);
            if (k > 0) margin = std::min(margin, u[k][i] - s[i]);
        }
    }
    rep.conclusion_violation = viol;
    rep.min_margin = margin;
    rep.conclusion_ok = viol <= options.conclusion_tolerance;
    if (!rep.initial_ok) rep.failed_hypotheses.push_back("initial");
    if (!rep.comp_ok) rep.failed_hypotheses.push_back("comp");
    if (!rep.comp2_ok) rep.failed_hypotheses.push_back("comp2");
    return rep;
}

}  // namespace semilab
