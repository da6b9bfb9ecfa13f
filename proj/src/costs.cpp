#include "semilab/costs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semilab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ControlCost::ControlCost(std::vector<Control> controls) : controls_(std::move(controls)) {
    if (controls_.empty()) throw std::domain_error("control cost: empty control list");
    bool found = false;
    for (std::size_t i = 0; i < controls_.size(); ++i) {
        const auto& c = controls_[i];
        if (!(c.a >= 0.0) || !std::isfinite(c.a) || !std::isfinite(c.b)) {
            throw std::domain_error("control cost: diffusion must be finite and nonnegative");
        }
        if (!(c.cost >= 0.0) || !std::isfinite(c.cost)) {
            throw std::domain_error("control cost: costs must be finite and nonnegative");
        }
        if (c.cost == 0.0 && !found) {
            zero_index_ = i;
            found = true;
        }
    }
    if (!found) throw std::domain_error("control cost: no zero-cost control");
}

ControlCost ControlCost::entropic(double b_max, double db) {
    if (!(b_max > 0.0) || !(db > 0.0)) throw std::domain_error("entropic controls: bad grid");
    const auto m = static_cast<long>(std::llround(b_max / db));
    std::vector<Control> cs;
    for (long k = -m; k <= m; ++k) {
        const double b = static_cast<double>(k) * db;
        cs.push_back({1.0, b, 0.5 * b * b});
    }
    return ControlCost(std::move(cs));
}

ControlCost ControlCost::single(double a, double b) { return ControlCost({{a, b, 0.0}}); }

double ControlCost::max_diffusion() const {
    double m = 0.0;
    for (const auto& c : controls_) m = std::max(m, c.a);
    return m;
}

double ControlCost::c_L() const {
    double m = 0.0;
    for (const auto& c : controls_) m = std::max(m, (std::abs(c.a) + std::abs(c.b)) / (1.0 + c.cost));
    return m;
}

ControlCost ControlCost::symmetric_subset() const {
    std::vector<Control> out;
    for (const auto& c : controls_) {
        const bool mirrored = std::any_of(controls_.begin(), controls_.end(), [&](const Control& d) {
            return d.a == c.a && d.b == -c.b;
        });
        if (mirrored) out.push_back(c);
    }
    return ControlCost(std::move(out));
}

PhiCost PhiCost::table(std::vector<double> v_grid, std::vector<double> values, double p) {
    if (v_grid.size() < 2 || v_grid.size() != values.size()) {
        throw std::domain_error("phi table: need matching grids with at least two nodes");
    }
    if (v_grid.front() != 0.0 || values.front() != 0.0) {
        throw std::domain_error("phi table: must start at phi(0) = 0");
    }
    for (std::size_t k = 1; k < v_grid.size(); ++k) {
        if (!(v_grid[k] > v_grid[k - 1])) throw std::domain_error("phi table: v-grid must increase");
        if (!(values[k] >= values[k - 1])) throw std::domain_error("phi table: phi must be nondecreasing");
        if (!std::isfinite(values[k])) throw std::domain_error("phi table: values must be finite");
    }
    for (std::size_t k = 1; k + 1 < v_grid.size(); ++k) {
        const double s1 = (values[k] - values[k - 1]) / (v_grid[k] - v_grid[k - 1]);
        const double s2 = (values[k + 1] - values[k]) / (v_grid[k + 1] - v_grid[k]);
        if (s2 < s1 - 1e-12 * std::max(1.0, std::abs(s1))) throw std::domain_error("phi table: not convex");
    }
    if (!(p >= 1.0)) throw std::domain_error("phi: order p must be >= 1");
    PhiCost c(Kind::table, p);
    c.v_grid_ = std::move(v_grid);
    c.values_ = std::move(values);
    return c;
}

PhiCost PhiCost::quadratic(double p) {
    if (!(p >= 1.0)) throw std::domain_error("phi: order p must be >= 1");
    PhiCost c(Kind::quadratic, p);
    for (int k = 0; k <= 8 * 256; ++k) c.v_grid_.push_back(k / 256.0);
    return c;
}

PhiCost PhiCost::ball(double r, double p) {
    if (!(r > 0.0)) throw std::domain_error("phi ball: radius must be positive");
    if (!(p >= 1.0)) throw std::domain_error("phi: order p must be >= 1");
    PhiCost c(Kind::ball, p);
    c.radius_ = r;
    c.v_grid_ = {0.0, r};
    return c;
}

PhiCost PhiCost::zero_budget(double p) {
    if (!(p >= 1.0)) throw std::domain_error("phi: order p must be >= 1");
    PhiCost c(Kind::zero_budget, p);
    c.v_grid_ = {0.0};
    return c;
}

double PhiCost::horizon() const {
    switch (kind_) {
        case Kind::table: return v_grid_.back();
        case Kind::quadratic: return kInf;
        case Kind::ball: return radius_;
        case Kind::zero_budget: return 0.0;
    }
    return 0.0;
}

double PhiCost::operator()(double v) const {
    if (v < 0.0) throw std::domain_error("phi: negative argument");
    switch (kind_) {
        case Kind::quadratic: return 0.5 * v * v;
        case Kind::ball: return v <= radius_ ? 0.0 : kInf;
        case Kind::zero_budget: return v == 0.0 ? 0.0 : kInf;
        case Kind::table: {
            if (v > v_grid_.back()) return kInf;
            const auto it = std::upper_bound(v_grid_.begin(), v_grid_.end(), v);
            const auto k = static_cast<std::size_t>(it - v_grid_.begin());
            if (k >= v_grid_.size()) return values_.back();
            const double s = (v - v_grid_[k - 1]) / (v_grid_[k] - v_grid_[k - 1]);
            return (1.0 - s) * values_[k - 1] + s * values_[k];
        }
    }
    return kInf;
}

double PhiCost::phi_t(double v, double t) const {
    if (t < 0.0) throw std::domain_error("phi_t: negative time");
    if (t == 0.0) return v == 0.0 ? 0.0 : kInf;
    const double inner = (*this)(v / t);
    return std::isfinite(inner) ? t * inner : kInf;
}

double PhiCost::conjugate(double w) const {
    if (w < 0.0) throw std::domain_error("conjugate: negative argument");
    double best = 0.0;
    for (double v : v_grid_) best = std::max(best, v * w - (*this)(v));
    // The quadratic maximiser v = w is itself a feasible search point.
    if (kind_ == Kind::quadratic) best = std::max(best, w * w - (*this)(w));
    return best;
}

bool PhiCost::power_convex(int samples) const {
    const double top = std::isfinite(horizon()) ? horizon() : 4.0;
    if (top <= 0.0) return true;
    const double vmax = std::pow(top, p_);
    std::vector<double> vals;
    for (int k = 0; k <= samples; ++k) {
        vals.push_back((*this)(std::pow(vmax * k / samples, 1.0 / p_)));
    }
    for (int k = 1; k < samples; ++k) {
        if (vals[k + 1] - 2.0 * vals[k] + vals[k - 1] < -1e-9 * (1.0 + std::abs(vals[k]))) return false;
    }
    return true;
}

double legendre_conjugate(const PhiCost& cost, double w) { return cost.conjugate(w); }

double legendre_conjugate(const ControlCost& cost, double c) {
    double best = -kInf;
    for (const auto& u : cost.controls()) {
        best = std::max(best, c * (std::abs(u.a) + std::abs(u.b)) - u.cost);
    }
    return best;
}

}  // namespace semilab
