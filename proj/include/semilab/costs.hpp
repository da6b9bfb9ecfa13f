#pragma once

#include <vector>

namespace semilab {

struct Control {
    double a = 0.0;  ///< diffusion coefficient, a >= 0
    double b = 0.0;  ///< drift
    double cost = 0.0;  ///< running cost L(a, b) >= 0
};

/// Finite control list with a zero-cost member.
class ControlCost {
public:
    explicit ControlCost(std::vector<Control> controls);

    /// a = 1, L = b^2/2 on the symmetric grid |b| <= b_max with spacing db.
    static ControlCost entropic(double b_max = 2.0, double db = 0.05);
    /// Single zero-cost control: the linear heat/transport semigroup.
    static ControlCost single(double a, double b);

    const std::vector<Control>& controls() const { return controls_; }
    std::size_t size() const { return controls_.size(); }
    const Control& zero_cost() const { return controls_[zero_index_]; }
    double max_diffusion() const;
    /// sup (|a| + |b|) / (1 + L): finite superlinearity diagnostic.
    double c_L() const;
    /// Members whose mirrored drift (a, -b) is also present.
    ControlCost symmetric_subset() const;

private:
    std::vector<Control> controls_;
    std::size_t zero_index_ = 0;
};

/// Convex nondecreasing phi on [0, inf) with phi(0) = 0, possibly +inf beyond a horizon.
class PhiCost {
public:
    enum class Kind { table, quadratic, ball, zero_budget };

    /// Piecewise-linear table on an increasing v-grid starting at 0; +inf beyond the last node.
    static PhiCost table(std::vector<double> v_grid, std::vector<double> values, double p = 2.0);
    /// phi(v) = v^2 / 2.
    static PhiCost quadratic(double p = 2.0);
    /// phi = 0 on [0, r], +inf beyond.
    static PhiCost ball(double r, double p = 2.0);
    /// phi(0) = 0, +inf elsewhere.
    static PhiCost zero_budget(double p = 2.0);

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double radius() const { return radius_; }
    /// Largest v with phi(v) < inf.
    double horizon() const;

    double operator()(double v) const;
    /// phi_t(v) = t phi(v / t); at t = 0 only v = 0 is finite.
    double phi_t(double v, double t) const;
    /// sup_{v >= 0} (v w - phi(v)).
    double conjugate(double w) const;
    /// Sampled check that V -> phi(V^{1/p}) is convex.
    bool power_convex(int samples = 64) const;

    const std::vector<double>& v_grid() const { return v_grid_; }

private:
    PhiCost(Kind kind, double p) : kind_(kind), p_(p) {}

    Kind kind_;
    double p_;
    double radius_ = 0.0;
    std::vector<double> v_grid_;
    std::vector<double> values_;
};

double legendre_conjugate(const PhiCost& cost, double w);
/// L*(c) = max over controls of c (|a| + |b|) - L(a, b).
double legendre_conjugate(const ControlCost& cost, double c);

}  // namespace semilab
