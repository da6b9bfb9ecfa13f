#pragma once

#include <functional>
#include <vector>

#include "semilab/costs.hpp"
#include "semilab/grid.hpp"
#include "semilab/measures.hpp"

namespace semilab {

/// How Gaussian transitions are evaluated on the grid.
enum class KernelKind {
    gauss_hermite,  ///< quadrature nodes + linear interpolation
    lattice,        ///< exact continuous-time random walk on the grid lattice
};

struct Backend {
    KernelKind kind = KernelKind::gauss_hermite;
    QuadratureRule quad = QuadratureRule::gauss_hermite(33);
};

/**
 * Reference family R(t)f(x) = E f(psi_t(x) + Y_t) with psi_t(x) = e^{-c t} x + s t
 * (c = contraction, s = shift) and Y_t either N(0, diffusion * t), sqrt(t) * Y for a
 * centred atomic Y, or 0.
 */
struct ReferenceModel {
    enum class Noise { gaussian, atomic, dirac };

    double contraction = 0.0;
    double shift = 0.0;
    Noise noise = Noise::gaussian;
    double diffusion = 1.0;
    AtomicMeasure unit_atoms;
    Backend backend;

    static ReferenceModel brownian(double diffusion = 1.0, Backend backend = {});
    /// psi_t(x) = x + speed * t, no noise.
    static ReferenceModel transport(double speed);

    double psi(double t, double x) const;
    /// Constant L in |psi_t(x) - psi_t(y) - (x - y)| <= L t |x - y|.
    double lipschitz_L() const { return contraction; }
    /// Largest defect |psi_t(x) - psi_t(y) - (x - y)| / (t |x - y|) over grid pairs.
    double measured_defect(const WeightedGrid& grid, double t) const;
    /// Transition law of Y_t as atoms (quadrature atoms for Gaussian noise).
    AtomicMeasure mu(double t) const;
    /// R'(0)f = (variance rate / 2) f'' + (shift - contraction x) f'.
    GridFunction generator_form(const GridFunction& f) const;

    void validate() const;
};

GridFunction reference_step(const ReferenceModel& model, double t, const GridFunction& f);

GridFunction control_step(const ControlCost& cost, const Backend& backend, double t,
                          const GridFunction& f);

/// sup over velocities b of R-shifted expectation at displacement b t minus phi_t(|b| t).
GridFunction drift_step(const ReferenceModel& model, const PhiCost& cost, double t,
                        const GridFunction& f, const std::vector<double>& b_grid);

/// Distributionally robust step over per-atom displacements; see README for the solver.
GridFunction wasserstein_step(const ReferenceModel& model, const PhiCost& cost, double t,
                              const GridFunction& f, const std::vector<double>& budget_grid,
                              const std::vector<double>& displacement_grid);

/// (1/theta) log E exp(theta f(x + W_t)).
GridFunction entropic_exact(double t, const GridFunction& f, const Backend& backend = {},
                            double theta = 1.0);

enum class HjbScheme {
    automatic,  ///< centred drift where a / dx >= |b|, upwind otherwise
    upwind,
};

/// Largest stable explicit time step for the control list on spacing dx.
double hjb_stable_dt(const ControlCost& cost, double dx, HjbScheme scheme = HjbScheme::automatic);

GridFunction hjb_fd_oracle(const ControlCost& cost, const GridFunction& f, double t, double dt,
                           HjbScheme scheme = HjbScheme::automatic);

/// One-step family t -> I(t).
using StepOperator = std::function<GridFunction(double, const GridFunction&)>;

/// Symmetric grid {-b_max, ..., b_max} with spacing db.
std::vector<double> symmetric_grid(double b_max, double db);

/// Displacement and budget grids for the Wasserstein step.
struct WassersteinGrids {
    /// Velocities v: displacements v * t (used when lattice_cells == 0).
    std::vector<double> velocities;
    /// When positive: displacements k dx for |k| <= lattice_cells.
    long lattice_cells = 0;

    std::vector<double> displacements(double t, double dx) const;
    std::vector<double> budgets(double t, double dx) const;
};

StepOperator make_reference_step(ReferenceModel model);
StepOperator make_control_step(ControlCost cost, Backend backend = {});
StepOperator make_drift_step(ReferenceModel model, PhiCost cost, std::vector<double> velocities);
StepOperator make_wasserstein_step(ReferenceModel model, PhiCost cost, WassersteinGrids grids);
StepOperator make_entropic_step(Backend backend = {}, double theta = 1.0);
StepOperator make_hjb_step(ControlCost cost, double dt, HjbScheme scheme = HjbScheme::automatic);
StepOperator make_identity_step();

}  // namespace semilab
