#include "semilab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace semilab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

namespace {

std::string radius_label(double r) {
    const double rounded = std::round(r);
    if (std::abs(r - rounded) < 1e-12) return std::to_string(static_cast<long>(rounded));
    return format_number(r);
}

}  // namespace

std::string to_csv(const GridFunction& f) {
    std::ostringstream os;
    os << "x,value,is_neg_inf\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        os << format_number(f.grid().x(i)) << ',' << (f.is_neg_inf(i) ? "-inf" : format_number(f[i])) << ','
           << (f.is_neg_inf(i) ? 1 : 0) << '\n';
    }
    return os.str();
}

Json to_json(const GridFunction& f) {
    Json values = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) values.push_back(json_number(f[i]));
    return Json{{"grid", {{"dx", f.grid().dx()}, {"span", f.grid().span()}}},
                {"values", std::move(values)},
                {"klass", f.klass() == Klass::usc ? "usc" : "continuous"}};
}

GridFunction grid_function_from_json(const Json& j) {
    const double dx = j.at("grid").at("dx").get<double>();
    const double span = j.at("grid").at("span").get<double>();
    const std::string klass = j.at("klass").get<std::string>();
    if (klass != "usc" && klass != "continuous") throw std::domain_error("grid function json: unknown klass");
    std::vector<double> values;
    for (const auto& v : j.at("values")) {
        if (v.is_string()) {
            if (v.get<std::string>() != "-inf") throw std::domain_error("grid function json: bad value");
            values.push_back(kNegInf);
        } else {
            values.push_back(v.get<double>());
        }
    }
    return GridFunction(WeightedGrid::uniform(span, dx), std::move(values),
                        klass == "usc" ? Klass::usc : Klass::continuous);
}

Json to_json(const ConvergenceReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json o{{"n", row.n}, {"h", row.h}, {"k", row.k}, {"sup_norm", json_number(row.sup_norm)}};
        for (std::size_t w = 0; w < r.radii.size(); ++w) {
            o["diff_K" + radius_label(r.radii[w])] = json_number(row.diffs[w]);
        }
        o["lip_const"] = json_number(row.lip_const);
        o["monotone_violation"] = json_number(row.monotone_violation);
        rows.push_back(std::move(o));
    }
    return Json{{"rows", std::move(rows)},
                {"tolerance", r.tolerance},
                {"converged", r.converged},
                {"diverged", r.diverged},
                {"violation_count", r.violation_count},
                {"max_violation", json_number(r.max_violation)}};
}

std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream os;
    os << "n,h,k,sup_norm";
    for (double radius : r.radii) os << ",diff_K" << radius_label(radius);
    os << ",lip_const,monotone_violation\n";
    for (const auto& row : r.rows) {
        os << row.n << ',' << format_number(row.h) << ',' << row.k << ',' << format_number(row.sup_norm);
        for (double d : row.diffs) os << ',' << format_number(d);
        os << ',' << format_number(row.lip_const) << ',' << format_number(row.monotone_violation) << '\n';
    }
    return os.str();
}

Json to_json(const MixedConvergenceReport& r) {
    Json windows = Json::array();
    for (std::size_t w = 0; w < r.radii.size(); ++w) {
        windows.push_back({{"radius", r.radii[w]},
                           {"tail_error", json_number(r.tail_errors[w])},
                           {"final_error", json_number(r.final_errors[w])}});
    }
    return Json{{"kappa_bound", json_number(r.kappa_bound)}, {"windows", std::move(windows)},
                {"converged", r.converged}};
}

Json to_json(const DominationEntry& e) {
    Json o{{"epsilon", e.epsilon}, {"window", e.window}};
    if (e.n0) {
        o["n0"] = *e.n0;
    } else {
        o["n0"] = "fail";
    }
    o["worst_gap"] = json_number(e.worst_gap);
    return o;
}

std::string membership_name(Membership m) {
    switch (m) {
        case Membership::yes: return "yes";
        case Membership::no: return "no";
        case Membership::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string side_name(Side s) {
    switch (s) {
        case Side::upper: return "upper";
        case Side::full: return "full";
        case Side::symmetric: return "symmetric";
    }
    return "upper";
}

Json to_json(const LipschitzVerdict& v) {
    Json cs = Json::array();
    for (std::size_t k = 0; k < v.hs.size(); ++k) {
        cs.push_back({{"h", v.hs[k]}, {"c", json_number(v.c_values[k])}});
    }
    return Json{{"member", membership_name(v.member)},
                {"c_estimate", json_number(v.c_estimate)},
                {"h0", v.h0},
                {"side", side_name(v.side)},
                {"quotients", std::move(cs)}};
}

Json to_json(const ComparisonReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"probe", row.probe}, {"t", row.t}, {"max_violation", json_number(row.max_violation)}});
    }
    return Json{{"rows", std::move(rows)},
                {"max_violation", json_number(r.max_violation)},
                {"tolerance", r.tolerance},
                {"ordered", r.ordered}};
}

Json to_json(const SupersolutionReport& r) {
    return Json{{"initial_ok", r.initial_ok},
                {"initial_gap", json_number(r.initial_gap)},
                {"comp_ok", r.comp_ok},
                {"comp_negative_part", json_number(r.comp_negative_part)},
                {"comp2_ok", r.comp2_ok},
                {"comp2_residual", json_number(r.comp2_residual)},
                {"conclusion_ok", r.conclusion_ok},
                {"conclusion_violation", json_number(r.conclusion_violation)},
                {"min_margin", json_number(r.min_margin)},
                {"failed_hypotheses", r.failed_hypotheses}};
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace semilab
