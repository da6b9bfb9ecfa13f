#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "semilab/chernoff.hpp"
#include "semilab/funcspace.hpp"
#include "semilab/gamma.hpp"
#include "semilab/measures.hpp"

namespace semilab::cli {

namespace fs = std::filesystem;

namespace {

GridPtr make_grid(const ExperimentConfig& c) {
    std::vector<double> radii;
    for (double r : {1.0, 2.0, 4.0}) {
        if (r <= c.span) radii.push_back(r);
    }
    if (radii.empty()) radii.push_back(c.span);
    return WeightedGrid::uniform(c.span, c.dx, WeightedGrid::Weight::unit, radii);
}

Check at_most(std::string name, double value, double limit) {
    return Check{std::move(name), value <= limit, value, limit};
}

Check at_least(std::string name, double value, double limit) {
    return Check{std::move(name), value >= limit, value, limit};
}

Check flag(std::string name, bool ok) { return Check{std::move(name), ok, ok ? 1.0 : 0.0, 1.0}; }

std::string profile_csv(const std::vector<std::pair<std::string, const GridFunction*>>& columns) {
    std::ostringstream os;
    os << "x";
    for (const auto& [name, f] : columns) os << ',' << name;
    os << '\n';
    const auto& g = columns.front().second->grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << format_number(g.x(i));
        for (const auto& [name, f] : columns) os << ',' << format_number((*f)[i]);
        os << '\n';
    }
    return os.str();
}

/// Least-squares slope of log(err) against log(h).
double loglog_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double x = std::log(hs[i]), y = std::log(std::max(errs[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool standard_quadratic(const ModelSpec& m) {
    return m.phi == "quadratic" && m.diffusion == 1.0 && m.contraction == 0.0 && m.shift == 0.0;
}

std::string resolve_oracle(const ExperimentConfig& c) {
    if (c.oracle != "auto") return c.oracle;
    if (c.model.kind == "entropic") return "entropic";
    if (c.model.kind == "control") return "hjb";
    return standard_quadratic(c.model) ? "entropic" : "none";
}

double hjb_dt(const ModelSpec& m, double dx) {
    const auto scheme = m.hjb_scheme == "upwind" ? HjbScheme::upwind : HjbScheme::automatic;
    return m.hjb_dt_factor * hjb_stable_dt(model_controls(m), dx, scheme);
}

GridFunction hjb_oracle(const ModelSpec& m, const GridFunction& f, double t) {
    const auto scheme = m.hjb_scheme == "upwind" ? HjbScheme::upwind : HjbScheme::automatic;
    return hjb_fd_oracle(model_controls(m), f, t, hjb_dt(m, f.grid().dx()), scheme);
}

GridFunction entropic_oracle(const ModelSpec& m, const GridFunction& f, double t) {
    const double theta = m.kind == "entropic" ? m.theta : 1.0;
    return entropic_exact(t, f, model_backend(m), theta);
}

ChernoffRun run_step(const ExperimentConfig& c, const StepOperator& step, const GridFunction& f) {
    RunOptions o;
    o.tolerance = c.convergence_tolerance;
    o.ceiling = c.ceiling;
    return chernoff_run(step, f, c.t, Schedule::dyadic(c.t, c.first, c.last), o);
}

Json convergence_summary(const ChernoffRun& run) {
    Json j = to_json(run.report);
    j.erase("rows");
    return j;
}

}  // namespace

bool Outcome::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

GridFunction model_probe(const ModelSpec& m, const GridPtr& grid) {
    const double s = m.probe_scale;
    if (m.probe == "ramp") return GridFunction::from(grid, [s](double x) { return s * std::clamp(x, -1.0, 1.0); });
    if (m.probe == "tanh") return GridFunction::from(grid, [s](double x) { return s * std::tanh(x); });
    if (m.probe == "wave") {
        return GridFunction::from(grid, [s](double x) { return s * std::sin(x) * std::exp(-x * x / 4.0); });
    }
    if (m.probe == "shifted_bump") {
        return GridFunction::from(grid, [s](double x) { return s * 0.8 * std::exp(-(x - 0.5) * (x - 0.5) / 2.0); });
    }
    return GridFunction::from(grid, [s](double x) { return s * std::exp(-x * x); });
}

std::vector<std::pair<std::string, GridFunction>> smooth_probe_catalog(const GridPtr& g) {
    return {
        {"bump", GridFunction::from(g, [](double x) { return std::exp(-x * x); })},
        {"shifted_bump", GridFunction::from(g, [](double x) { return 0.8 * std::exp(-(x - 0.5) * (x - 0.5) / 2.0); })},
        {"wave", GridFunction::from(g, [](double x) { return std::sin(x) * std::exp(-x * x / 4.0); })},
        {"tanh", GridFunction::from(g, [](double x) { return std::tanh(x); })},
        {"cosine", GridFunction::from(g, [](double x) { return std::cos(x) * std::exp(-x * x / 8.0); })},
    };
}

GridFunction root_probe(const GridPtr& g) {
    return GridFunction::from(g, [](double x) { return std::sqrt(std::min(std::abs(x), 4.0)); });
}

Backend model_backend(const ModelSpec& m) {
    Backend b;
    b.kind = m.backend == "lattice" ? KernelKind::lattice : KernelKind::gauss_hermite;
    b.quad = QuadratureRule::gauss_hermite(static_cast<std::size_t>(m.nodes));
    return b;
}

ControlCost model_controls(const ModelSpec& m) {
    if (m.control_cost == "single") return ControlCost::single(m.single_a, m.single_b);
    return ControlCost::entropic(m.b_max, m.db);
}

ReferenceModel model_reference(const ModelSpec& m) {
    auto r = ReferenceModel::brownian(m.diffusion, model_backend(m));
    r.contraction = m.contraction;
    r.shift = m.shift;
    if (m.diffusion == 0.0) r.noise = ReferenceModel::Noise::dirac;
    r.validate();
    return r;
}

PhiCost model_phi(const ModelSpec& m) {
    if (m.phi == "ball") return PhiCost::ball(m.phi_radius, m.phi_p);
    if (m.phi == "zero_budget") return PhiCost::zero_budget(m.phi_p);
    return PhiCost::quadratic(m.phi_p);
}

StepOperator model_step(const ModelSpec& m) {
    if (m.kind == "control") return make_control_step(model_controls(m), model_backend(m));
    if (m.kind == "perturbation") {
        const auto v = symmetric_grid(m.v_max, m.dv);
        if (m.step == "wasserstein") return make_wasserstein_step(model_reference(m), model_phi(m), WassersteinGrids{v, 0});
        return make_drift_step(model_reference(m), model_phi(m), v);
    }
    return make_entropic_step(model_backend(m), m.theta);
}

Outcome chernoff_run_experiment(const ExperimentConfig& c) {
    const auto g = make_grid(c);
    const auto f = model_probe(c.model, g);
    const auto run = run_step(c, model_step(c.model), f);
    Outcome out;
    out.tables["convergence.csv"] = to_csv(run.report);
    out.report["convergence"] = to_json(run.report);
    out.checks.push_back(flag("not_diverged", !run.report.diverged));
    if (run.report.diverged) return out;

    const auto& limit = run.iterates.back();
    const auto oracle = resolve_oracle(c);
    out.report["oracle"] = oracle;
    if (oracle == "none") {
        out.tables["profile.csv"] = profile_csv({{"chernoff", &limit}});
        return out;
    }
    const auto ref = oracle == "hjb" ? hjb_oracle(c.model, f, c.t) : entropic_oracle(c.model, f, c.t);
    const double gap = sup_on_window(limit - ref, c.window);
    out.report["oracle_gap"] = gap;
    out.checks.push_back(at_most("oracle_gap", gap, c.effective_tolerance()));
    out.tables["profile.csv"] = profile_csv({{"chernoff", &limit}, {oracle, &ref}});
    return out;
}

Outcome gen_check(const ExperimentConfig& c) {
    const auto g = make_grid(c);
    const auto& m = c.model;
    std::optional<SemigroupEval> S;
    GeneratorModel gm;
    if (m.kind == "control") {
        S = SemigroupEval::hjb(model_controls(m), hjb_dt(m, c.dx),
                               m.hjb_scheme == "upwind" ? HjbScheme::upwind : HjbScheme::automatic);
        gm = GeneratorModel::control(model_controls(m));
    } else if (m.kind == "perturbation") {
        S = SemigroupEval::chernoff(model_step(m), std::ldexp(1.0, -c.h_last));
        gm = GeneratorModel::perturbation(model_reference(m), model_phi(m));
    } else {
        S = SemigroupEval::entropic(model_backend(m), m.theta);
        gm = GeneratorModel::entropic(m.theta);
    }

    std::vector<double> hs;
    for (int k = c.h_first; k <= c.h_last; ++k) hs.push_back(std::ldexp(1.0, -k));

    Outcome out;
    std::ostringstream table, summary, lip;
    table << "probe,h,error\n";
    summary << "probe,slope,final_error\n";
    lip << "probe,side,member,c_estimate\n";
    Json probes = Json::array();
    const auto member_hs = default_h_schedule();
    for (const auto& [name, f] : smooth_probe_catalog(g)) {
        const auto oracle = smooth_generator_oracle(f, gm);
        std::vector<double> errs;
        for (double h : hs) {
            errs.push_back(sup_on_window(difference_quotient(*S, f, h) - oracle, c.window));
            table << name << ',' << format_number(h) << ',' << format_number(errs.back()) << '\n';
        }
        const double slope = loglog_slope(hs, errs);
        summary << name << ',' << format_number(slope) << ',' << format_number(errs.back()) << '\n';
        out.checks.push_back(at_least(name + ".slope", slope, c.slope_min));
        out.checks.push_back(at_most(name + ".final_error", errs.back(), c.effective_tolerance()));
        const auto v = lipschitz_membership(*S, f, Side::upper, member_hs);
        lip << name << ",upper," << membership_name(v.member) << ',' << format_number(v.c_estimate) << '\n';
        out.checks.push_back(flag(name + ".lipschitz_member", v.member == Membership::yes));
        probes.push_back({{"probe", name}, {"slope", slope}, {"final_error", errs.back()}, {"lipschitz", to_json(v)}});
    }
    const auto root = lipschitz_membership(*S, root_probe(g), Side::upper, member_hs);
    lip << "root,upper," << membership_name(root.member) << ',' << format_number(root.c_estimate) << '\n';
    out.checks.push_back(flag("root.lipschitz_nonmember", root.member == Membership::no));
    out.report["evaluator"] = S->name();
    out.report["probes"] = std::move(probes);
    out.report["root_probe"] = to_json(root);
    out.tables["generator.csv"] = table.str();
    out.tables["generator_summary.csv"] = summary.str();
    out.tables["lipschitz.csv"] = lip.str();
    return out;
}

Outcome hjb_compare(const ExperimentConfig& c) {
    if (c.model.kind != "control") throw UsageError("hjb-compare needs a control model");
    const auto g = make_grid(c);
    const auto f = model_probe(c.model, g);
    const auto run = run_step(c, model_step(c.model), f);
    Outcome out;
    out.tables["convergence.csv"] = to_csv(run.report);
    out.report["convergence"] = convergence_summary(run);
    out.checks.push_back(flag("not_diverged", !run.report.diverged));
    if (run.report.diverged) return out;
    const auto& limit = run.iterates.back();
    const auto hjb = hjb_oracle(c.model, f, c.t);
    const double tol = c.effective_tolerance();
    const double gap = sup_on_window(limit - hjb, c.window);
    out.report["chernoff_vs_hjb"] = gap;
    out.checks.push_back(at_most("chernoff_vs_hjb", gap, tol));
    if (c.model.control_cost == "entropic") {
        const auto ent = entropic_exact(c.t, f, model_backend(c.model));
        const double a = sup_on_window(limit - ent, c.window), b = sup_on_window(hjb - ent, c.window);
        out.report["chernoff_vs_entropic"] = a;
        out.report["hjb_vs_entropic"] = b;
        out.checks.push_back(at_most("chernoff_vs_entropic", a, tol));
        out.checks.push_back(at_most("hjb_vs_entropic", b, tol));
        out.tables["profile.csv"] = profile_csv({{"chernoff", &limit}, {"hjb", &hjb}, {"entropic", &ent}});
    } else {
        out.tables["profile.csv"] = profile_csv({{"chernoff", &limit}, {"hjb", &hjb}});
    }
    return out;
}

Outcome wasserstein_compare(const ExperimentConfig& c) {
    if (c.model.kind != "perturbation") throw UsageError("wasserstein-compare needs a perturbation model");
    const auto g = make_grid(c);
    const auto f = model_probe(c.model, g);
    const auto reference = model_reference(c.model);
    const auto phi = model_phi(c.model);
    const auto v = symmetric_grid(c.model.v_max, c.model.dv);
    const WassersteinGrids grids{v, 0};
    const auto drift = run_step(c, make_drift_step(reference, phi, v), f);
    const auto wass = run_step(c, make_wasserstein_step(reference, phi, grids), f);

    Outcome out;
    out.tables["convergence_drift.csv"] = to_csv(drift.report);
    out.tables["convergence_wasserstein.csv"] = to_csv(wass.report);
    out.report["drift"] = convergence_summary(drift);
    out.report["wasserstein"] = convergence_summary(wass);
    out.checks.push_back(flag("not_diverged", !drift.report.diverged && !wass.report.diverged));
    const double tol = c.effective_tolerance();
    const double allowance = 2.0 * c.dx;
    if (!drift.report.diverged && !wass.report.diverged) {
        const auto& J = drift.iterates.back();
        const auto& I = wass.iterates.back();
        const double gap = sup_on_window(I - J, c.window);
        out.report["limit_gap"] = gap;
        out.checks.push_back(at_most("limit_gap", gap, tol + allowance));
        if (standard_quadratic(c.model)) {
            const auto ent = entropic_exact(c.t, f, model_backend(c.model));
            const double a = sup_on_window(J - ent, c.window), b = sup_on_window(I - ent, c.window);
            out.report["drift_vs_entropic"] = a;
            out.report["wasserstein_vs_entropic"] = b;
            out.checks.push_back(at_most("drift_vs_entropic", a, tol));
            out.checks.push_back(at_most("wasserstein_vs_entropic", b, tol));
            out.tables["profile.csv"] = profile_csv({{"drift", &J}, {"wasserstein", &I}, {"entropic", &ent}});
        } else {
            out.tables["profile.csv"] = profile_csv({{"drift", &J}, {"wasserstein", &I}});
        }
    }

    // 0 <= J - R <= I - R <= phi*(r) t for the r-Lipschitz ramp
    const double r = c.chain_r;
    const auto ramp = GridFunction::from(g, [r](double x) { return r * std::clamp(x, -1.0, 1.0); });
    const double R = g->largest_window();
    std::ostringstream chain;
    chain << "t,drift_minus_reference_min,drift_minus_robust_max,robust_excess_max\n";
    Json rows = Json::array();
    double worst = 0.0;
    for (double t : c.chain_times) {
        const auto Rf = reference_step(reference, t, ramp);
        const auto Jf = drift_step(reference, phi, t, ramp, v);
        const auto If = wasserstein_step(reference, phi, t, ramp, grids.budgets(t, c.dx), grids.displacements(t, c.dx));
        const double jr = 0.0 - max_difference_on_window(Rf, Jf, R);
        const double ji = max_difference_on_window(Jf, If, R);
        const auto bound = GridFunction::constant(g, phi.conjugate(r) * t);
        const double ib = max_difference_on_window(If - Rf, bound, R);
        worst = std::max({worst, -jr, ji, ib});
        chain << format_number(t) << ',' << format_number(jr) << ',' << format_number(ji) << ',' << format_number(ib)
              << '\n';
        rows.push_back({{"t", t}, {"drift_minus_reference_min", jr}, {"drift_minus_robust_max", ji},
                        {"robust_excess_max", ib}});
    }
    out.report["chain"] = std::move(rows);
    out.checks.push_back(at_most("ordering_chain", worst, c.chain_tolerance + allowance));
    out.tables["chain.csv"] = chain.str();
    return out;
}

Outcome talagrand(const ExperimentConfig& c) {
    const double t = c.t;
    if (!(t > 0.0)) throw std::domain_error("talagrand: t must be positive");
    const double tol = c.effective_tolerance();
    const Measure mu = GaussianMeasure{0.0, t};
    Outcome out;
    std::ostringstream table;
    table << "mean,variance,w2,entropy,slack\n";
    Json rows = Json::array();
    double worst = 0.0, shift_worst = 0.0, strict_min = std::numeric_limits<double>::infinity();
    bool any_strict = false;
    for (const auto& [m, factor] : c.family) {
        if (!(factor * t > 0.0)) throw std::domain_error("talagrand: family variances must be positive");
        const Measure nu = GaussianMeasure{m, factor * t};
        const double w2 = w2_1d(nu, mu);
        const double H = relative_entropy(nu, mu);
        const double slack = std::sqrt(2.0 * t * H) - w2;
        table << format_number(m) << ',' << format_number(factor * t) << ',' << format_number(w2) << ','
              << format_number(H) << ',' << format_number(slack) << '\n';
        rows.push_back({{"mean", m}, {"variance", factor * t}, {"w2", w2}, {"entropy", json_number(H)},
                        {"slack", json_number(slack)}});
        worst = std::min(worst, slack);
        if (factor == 1.0) {
            shift_worst = std::max(shift_worst, std::abs(slack));
        } else {
            any_strict = true;
            strict_min = std::min(strict_min, slack);
        }
    }
    out.report["rows"] = std::move(rows);
    out.checks.push_back(at_least("min_slack", worst, -tol));
    out.checks.push_back(at_most("mean_shift_equality", shift_worst, tol));
    if (any_strict) out.checks.push_back(at_least("variance_change_strict", strict_min, tol));
    out.tables["talagrand.csv"] = table.str();
    return out;
}

Outcome gamma_demo(const ExperimentConfig& c) {
    const auto g = make_grid(c);
    const int N = c.gamma_count;
    const double tol = c.effective_tolerance();
    Outcome out;

    // moving spike at 1/n: pointwise limit 0, Gamma-limsup 1 at the origin
    std::vector<GridFunction> spikes;
    std::vector<double> radii;
    for (int n = 1; n <= N; ++n) {
        std::vector<double> v(g->size(), 0.0);
        v[g->center() + static_cast<std::size_t>(std::lround(1.0 / n / g->dx()))] = 1.0;
        spikes.emplace_back(g, std::move(v));
        radii.push_back(std::max(g->dx(), 2.0 / n));
    }
    const auto limsup = gamma_limsup(spikes, WindowSchedule(radii));
    const auto& pointwise = spikes.back();
    out.tables["spike.csv"] = profile_csv({{"last_element", &pointwise}, {"gamma_limsup", &limsup}});
    out.report["spike"] = {{"gamma_limsup_at_0", limsup[g->center()]}, {"last_element_at_0", pointwise[g->center()]}};
    out.checks.push_back(at_most("spike_gamma_limsup_at_0", std::abs(limsup[g->center()] - 1.0), tol));
    out.checks.push_back(at_most("spike_last_element_at_0", std::abs(pointwise[g->center()]), tol));

    // decreasing sequence f + 2^-n bump: eventually dominated by every eps-parallel envelope
    const auto f = model_probe(c.model, g);
    const auto bump = GridFunction::from(g, [](double x) { return std::exp(-x * x); });
    std::vector<GridFunction> seq;
    for (int n = 1; n <= N; ++n) seq.push_back(f + std::ldexp(1.0, -n) * bump);
    const auto entries = gamma_domination_check(seq, f, c.gamma_eps);
    std::ostringstream dom;
    dom << "epsilon,window,n0,worst_gap\n";
    Json jd = Json::array();
    bool all = true;
    for (const auto& e : entries) {
        dom << format_number(e.epsilon) << ',' << format_number(e.window) << ','
            << (e.n0 ? std::to_string(*e.n0) : std::string("fail")) << ',' << format_number(e.worst_gap) << '\n';
        jd.push_back(to_json(e));
        all = all && e.n0.has_value();
    }
    out.report["domination"] = std::move(jd);
    out.checks.push_back(flag("domination_n0_found", all));
    out.tables["domination.csv"] = dom.str();

    const auto windows = WindowSchedule::standard(*g, seq.size());
    const auto lim = gamma_lim(seq, windows);
    out.report["gamma_lim_exists"] = lim.limit.has_value();
    if (lim.limit) {
        const double err = sup_on_window(*lim.limit - f, c.window);
        out.report["gamma_lim_error"] = err;
        const double allowance = discrete_lipschitz(f, c.span) * windows.radii().back() + std::ldexp(1.0, -N);
        out.checks.push_back(at_most("gamma_lim_error", err, allowance + tol));
    } else {
        out.checks.push_back(flag("gamma_lim_exists", false));
    }
    return out;
}

Outcome run_experiment(const ExperimentConfig& c) {
    const auto& e = c.experiment;
    if (e == "chernoff-run") return chernoff_run_experiment(c);
    if (e == "gen-check") return gen_check(c);
    if (e == "hjb-compare") return hjb_compare(c);
    if (e == "wasserstein-compare") return wasserstein_compare(c);
    if (e == "talagrand") return talagrand(c);
    if (e == "gamma-demo") return gamma_demo(c);
    throw UsageError("unknown experiment '" + e + "'");
}

int run(const ExperimentConfig& c, bool quiet, std::ostream& log) {
    c.validate();
    if (c.output_dir.empty()) throw UsageError("no output directory (use --out or experiment.output)");
    const std::string model_hash = sha256_hex(c.model.canonical());
    const fs::path manifest_path = c.output_dir / "MANIFEST.json";
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        Json old;
        try {
            old = Json::parse(in);
        } catch (const Json::exception&) {
            throw UsageError("unreadable " + manifest_path.string());
        }
        if (old.value("model_hash", std::string()) != model_hash) {
            throw UsageError("model hash mismatch with existing " + manifest_path.string());
        }
    }

    Outcome out = run_experiment(c);
    Json checks = Json::array();
    for (const auto& ch : out.checks) {
        checks.push_back(
            {{"name", ch.name}, {"passed", ch.passed}, {"value", json_number(ch.value)}, {"limit", json_number(ch.limit)}});
        if (!quiet) {
            log << (ch.passed ? "PASS " : "FAIL ") << ch.name << " value=" << format_number(ch.value)
                << " limit=" << format_number(ch.limit) << '\n';
        }
    }
    Json report{{"experiment", c.experiment},
                {"tool_version", kToolVersion},
                {"model_hash", model_hash},
                {"tolerance", c.effective_tolerance()},
                {"passed", out.passed()},
                {"checks", std::move(checks)}};
    for (auto& [k, v] : out.report.items()) report[k] = v;

    Json files = Json::array();
    for (const auto& [name, text] : out.tables) {
        write_file_atomic((c.output_dir / "tables" / name).string(), text);
        files.push_back({{"path", "tables/" + name}, {"sha256", sha256_hex(text)}});
    }
    const std::string report_text = report.dump(2) + "\n";
    write_file_atomic((c.output_dir / "report.json").string(), report_text);
    files.push_back({{"path", "report.json"}, {"sha256", sha256_hex(report_text)}});
    const Json manifest{{"tool", "semilab"},
                        {"tool_version", kToolVersion},
                        {"experiment", c.experiment},
                        {"model_hash", model_hash},
                        {"model", c.model.canonical()},
                        {"files", std::move(files)}};
    write_file_atomic(manifest_path.string(), manifest.dump(2) + "\n");
    if (!quiet) log << (out.passed() ? "PASSED " : "FAILED ") << c.experiment << '\n';
    return out.passed() ? 0 : 1;
}

}  // namespace semilab::cli
