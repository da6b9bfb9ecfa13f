#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <boost/algorithm/string.hpp>

namespace semilab::cli {

namespace pt = boost::property_tree;

namespace {

using Allowed = std::map<std::string, std::set<std::string>>;

const Allowed kModelKeys{
    {"model", {"kind", "backend", "nodes", "theta", "step"}},
    {"controls", {"b_max", "db", "cost", "a", "b", "hjb_dt_factor", "hjb_scheme"}},
    {"reference", {"diffusion", "contraction", "shift"}},
    {"phi", {"kind", "radius", "p", "v_max", "dv"}},
    {"probe", {"kind", "scale"}},
};

const Allowed kConfigKeys{
    {"experiment", {"name", "model", "output", "tolerance", "seed"}},
    {"grid", {"span", "dx", "window"}},
    {"schedule", {"t", "first", "last", "ceiling", "convergence_tolerance"}},
    {"checks", {"oracle", "slope_min", "h_first", "h_last", "chain_times", "chain_r", "chain_tolerance"}},
    {"talagrand", {"family"}},
    {"gamma", {"count", "eps"}},
};

pt::ptree read_ini(const std::filesystem::path& path, const Allowed& allowed) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path.string());
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw UsageError(path.string() + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        const auto it = allowed.find(section);
        if (it == allowed.end() || !body.data().empty()) {
            throw UsageError(path.string() + ": unknown section or top-level key '" + section + "'");
        }
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key)) throw UsageError(path.string() + ": unknown key '" + section + "." + key + "'");
        }
    }
    return tree;
}

template <class T>
void read(const pt::ptree& tree, const std::string& key, T& out) {
    const auto v = tree.get_optional<std::string>(key);
    if (!v) return;
    try {
        out = boost::lexical_cast<T>(boost::trim_copy(*v));
    } catch (const boost::bad_lexical_cast&) {
        throw UsageError("bad value for " + key + ": '" + *v + "'");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    boost::split(parts, s, boost::is_any_of(","));
    for (auto& p : parts) boost::trim(p);
    std::erase_if(parts, [](const std::string& p) { return p.empty(); });
    return parts;
}

void read_list(const pt::ptree& tree, const std::string& key, std::vector<double>& out) {
    const auto v = tree.get_optional<std::string>(key);
    if (!v) return;
    out.clear();
    for (const auto& p : split_list(*v)) {
        try {
            out.push_back(boost::lexical_cast<double>(p));
        } catch (const boost::bad_lexical_cast&) {
            throw UsageError("bad list entry for " + key + ": '" + p + "'");
        }
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
    return std::any_of(options.begin(), options.end(), [&](const char* o) { return v == o; });
}

}  // namespace

std::string ModelSpec::canonical() const {
    std::map<std::string, std::string> kv;
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    kv["model.kind"] = kind;
    kv["model.backend"] = backend;
    kv["model.nodes"] = std::to_string(nodes);
    kv["model.theta"] = num(theta);
    kv["model.step"] = step;
    kv["controls.b_max"] = num(b_max);
    kv["controls.db"] = num(db);
    kv["controls.cost"] = control_cost;
    kv["controls.a"] = num(single_a);
    kv["controls.b"] = num(single_b);
    kv["controls.hjb_dt_factor"] = num(hjb_dt_factor);
    kv["controls.hjb_scheme"] = hjb_scheme;
    kv["reference.diffusion"] = num(diffusion);
    kv["reference.contraction"] = num(contraction);
    kv["reference.shift"] = num(shift);
    kv["phi.kind"] = phi;
    kv["phi.radius"] = num(phi_radius);
    kv["phi.p"] = num(phi_p);
    kv["phi.v_max"] = num(v_max);
    kv["phi.dv"] = num(dv);
    kv["probe.kind"] = probe;
    kv["probe.scale"] = num(probe_scale);
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"chernoff-run", "gen-check",  "hjb-compare",
                                                "wasserstein-compare", "talagrand", "gamma-demo"};
    return names;
}

double default_tolerance(const std::string& experiment) {
    if (experiment == "gen-check") return 1e-2;
    if (experiment == "talagrand" || experiment == "gamma-demo") return 1e-9;
    return 5e-2;
}

double ExperimentConfig::effective_tolerance() const { return tolerance.value_or(default_tolerance(experiment)); }

void ExperimentConfig::validate() const {
    const auto& names = experiment_names();
    require(std::find(names.begin(), names.end(), experiment) != names.end(), "unknown experiment '" + experiment + "'");
    require(effective_tolerance() > 0.0, "tolerance must be positive");
    require(span > 0.0 && dx > 0.0 && dx < span, "grid: need 0 < dx < span");
    require(window > 0.0 && window <= span, "grid: window must lie in (0, span]");
    require(t > 0.0, "schedule: t must be positive");
    require(first >= 0 && last >= first, "schedule: need 0 <= first <= last");
    require(ceiling > 0.0 && convergence_tolerance > 0.0, "schedule: ceiling and convergence_tolerance must be positive");
    require(one_of(oracle, {"auto", "entropic", "hjb", "none"}), "checks: oracle must be auto, entropic, hjb or none");
    require(h_first >= 1 && h_last > h_first, "checks: need 1 <= h_first < h_last");
    require(!chain_times.empty() && chain_r > 0.0 && chain_tolerance >= 0.0, "checks: bad chain parameters");
    for (double s : chain_times) require(s > 0.0, "checks: chain times must be positive");
    for (const auto& [m, v] : family) require(std::isfinite(m) && v > 0.0, "talagrand: variances must be positive");
    require(gamma_count >= 2, "gamma: count must be at least 2");
    for (double e : gamma_eps) require(e > 0.0, "gamma: eps must be positive");

    const auto& m = model;
    require(one_of(m.kind, {"entropic", "control", "perturbation"}), "model: unknown kind '" + m.kind + "'");
    require(one_of(m.backend, {"gauss_hermite", "lattice"}), "model: unknown backend '" + m.backend + "'");
    require(m.nodes >= 3 && m.nodes % 2 == 1, "model: nodes must be odd and >= 3");
    require(m.theta > 0.0, "model: theta must be positive");
    require(one_of(m.step, {"drift", "wasserstein"}), "model: step must be drift or wasserstein");
    require(m.b_max > 0.0 && m.db > 0.0, "controls: b_max and db must be positive");
    require(one_of(m.control_cost, {"entropic", "single"}), "controls: cost must be entropic or single");
    require(m.single_a >= 0.0, "controls: a must be nonnegative");
    require(m.hjb_dt_factor > 0.0 && m.hjb_dt_factor <= 1.0, "controls: hjb_dt_factor must lie in (0, 1]");
    require(one_of(m.hjb_scheme, {"automatic", "upwind"}), "controls: hjb_scheme must be automatic or upwind");
    require(m.diffusion >= 0.0 && m.contraction >= 0.0, "reference: diffusion and contraction must be nonnegative");
    require(one_of(m.phi, {"quadratic", "ball", "zero_budget"}), "phi: unknown kind '" + m.phi + "'");
    require(m.phi_radius > 0.0 && m.phi_p > 1.0, "phi: need radius > 0 and p > 1");
    require(m.v_max > 0.0 && m.dv > 0.0, "phi: v_max and dv must be positive");
    require(one_of(m.probe, {"bump", "ramp", "tanh", "wave", "shifted_bump"}), "probe: unknown kind '" + m.probe + "'");
    require(m.probe_scale > 0.0, "probe: scale must be positive");
}

ModelSpec load_model(const std::filesystem::path& path) {
    const auto tree = read_ini(path, kModelKeys);
    ModelSpec m;
    read(tree, "model.kind", m.kind);
    read(tree, "model.backend", m.backend);
    read(tree, "model.nodes", m.nodes);
    read(tree, "model.theta", m.theta);
    read(tree, "model.step", m.step);
    read(tree, "controls.b_max", m.b_max);
    read(tree, "controls.db", m.db);
    read(tree, "controls.cost", m.control_cost);
    read(tree, "controls.a", m.single_a);
    read(tree, "controls.b", m.single_b);
    read(tree, "controls.hjb_dt_factor", m.hjb_dt_factor);
    read(tree, "controls.hjb_scheme", m.hjb_scheme);
    read(tree, "reference.diffusion", m.diffusion);
    read(tree, "reference.contraction", m.contraction);
    read(tree, "reference.shift", m.shift);
    read(tree, "phi.kind", m.phi);
    read(tree, "phi.radius", m.phi_radius);
    read(tree, "phi.p", m.phi_p);
    read(tree, "phi.v_max", m.v_max);
    read(tree, "phi.dv", m.dv);
    read(tree, "probe.kind", m.probe);
    read(tree, "probe.scale", m.probe_scale);
    return m;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    const auto tree = read_ini(path, kConfigKeys);
    ExperimentConfig c;
    read(tree, "experiment.name", c.experiment);
    if (const auto model = tree.get_optional<std::string>("experiment.model")) {
        std::filesystem::path p = boost::trim_copy(*model);
        if (p.is_relative()) p = path.parent_path() / p;
        c.model_path = p;
        c.model = load_model(p);
    }
    if (const auto out = tree.get_optional<std::string>("experiment.output")) {
        std::filesystem::path p = boost::trim_copy(*out);
        if (p.is_relative()) p = path.parent_path() / p;
        c.output_dir = p;
    }
    if (tree.get_optional<std::string>("experiment.tolerance")) {
        double tol = 0.0;
        read(tree, "experiment.tolerance", tol);
        c.tolerance = tol;
    }
    read(tree, "experiment.seed", c.seed);
    read(tree, "grid.span", c.span);
    read(tree, "grid.dx", c.dx);
    read(tree, "grid.window", c.window);
    read(tree, "schedule.t", c.t);
    read(tree, "schedule.first", c.first);
    read(tree, "schedule.last", c.last);
    read(tree, "schedule.ceiling", c.ceiling);
    read(tree, "schedule.convergence_tolerance", c.convergence_tolerance);
    read(tree, "checks.oracle", c.oracle);
    read(tree, "checks.slope_min", c.slope_min);
    read(tree, "checks.h_first", c.h_first);
    read(tree, "checks.h_last", c.h_last);
    read_list(tree, "checks.chain_times", c.chain_times);
    read(tree, "checks.chain_r", c.chain_r);
    read(tree, "checks.chain_tolerance", c.chain_tolerance);
    if (const auto fam = tree.get_optional<std::string>("talagrand.family")) {
        c.family.clear();
        for (const auto& entry : split_list(*fam)) {
            const auto colon = entry.find(':');
            if (colon == std::string::npos) throw UsageError("talagrand.family entries are mean:variance_factor");
            try {
                c.family.emplace_back(boost::lexical_cast<double>(boost::trim_copy(entry.substr(0, colon))),
                                      boost::lexical_cast<double>(boost::trim_copy(entry.substr(colon + 1))));
            } catch (const boost::bad_lexical_cast&) {
                throw UsageError("bad talagrand.family entry '" + entry + "'");
            }
        }
    }
    read(tree, "gamma.count", c.gamma_count);
    read_list(tree, "gamma.eps", c.gamma_eps);
    return c;
}

}  // namespace semilab::cli
