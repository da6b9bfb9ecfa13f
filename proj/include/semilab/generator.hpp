#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semilab/costs.hpp"
#include "semilab/gamma.hpp"
#include "semilab/grid.hpp"
#include "semilab/operators.hpp"

namespace semilab {

/**
 * Time-indexed evaluator t -> S(t)f with a memo of evaluated (t, f) pairs.
 * S(0)f = f exactly. Copies share one cache; lookups are serialised.
 */
class SemigroupEval {
public:
    using Fn = std::function<GridFunction(double, const GridFunction&)>;

    SemigroupEval(std::string name, Fn fn);

    GridFunction operator()(double t, const GridFunction& f) const;
    const std::string& name() const { return name_; }
    std::size_t cache_size() const;

    static SemigroupEval entropic(Backend backend = {}, double theta = 1.0);
    /// Linear semigroup E f(x + sqrt(a) W_t).
    static SemigroupEval heat(double a = 1.0, Backend backend = {});
    static SemigroupEval hjb(ControlCost cost, double dt, HjbScheme scheme = HjbScheme::automatic);
    /// Chernoff limit surrogate: k = ceil(t / h_max) steps of width t / k.
    static SemigroupEval chernoff(StepOperator step, double h_max, std::string name = "chernoff");
    static SemigroupEval identity();
    /// S(t)f = f(. + speed t).
    static SemigroupEval shift(double speed);

private:
    struct Cache;
    std::string name_;
    Fn fn_;
    std::shared_ptr<Cache> cache_;
};

/// {2^-3, ..., 2^-10} * t0.
std::vector<double> default_h_schedule(double t0 = 1.0);
/// delta(h) = max(dx, sqrt(h)) along hs.
WindowSchedule parabolic_windows(const WeightedGrid& grid, const std::vector<double>& hs);

GridFunction difference_quotient(const SemigroupEval& S, const GridFunction& f, double h);

/// Gamma-limsup of the difference quotients along hs; rejects f outside the upper
/// Lipschitz set unless override_check is set.
GridFunction gamma_generator(const SemigroupEval& S, const GridFunction& f, const std::vector<double>& hs,
                             std::optional<WindowSchedule> w = std::nullopt, bool override_check = false);

enum class Side { upper, full, symmetric };
enum class Membership { yes, no, inconclusive };

struct LipschitzVerdict {
    Membership member = Membership::inconclusive;
    double c_estimate = 0.0;
    double h0 = 0.0;
    Side side = Side::upper;
    std::vector<double> hs;
    std::vector<double> c_values;
};

LipschitzVerdict lipschitz_membership(const SemigroupEval& S, const GridFunction& f, Side side,
                                      const std::vector<double>& h_list);

/// Hamiltonian data for the closed-form generator of a smooth probe.
struct GeneratorModel {
    enum class Kind { control, perturbation, entropic };

    Kind kind = Kind::entropic;
    std::optional<ControlCost> controls;
    std::optional<ReferenceModel> reference;
    std::optional<PhiCost> phi;
    double theta = 1.0;

    static GeneratorModel control(ControlCost cost);
    static GeneratorModel perturbation(ReferenceModel reference, PhiCost phi);
    static GeneratorModel entropic(double theta = 1.0);
};

GridFunction smooth_generator_oracle(const GridFunction& f, const GeneratorModel& model);

struct PipelineResult {
    std::vector<GridFunction> sequence;
    GridFunction limit;
    double commutator = 0.0;
    double commutator_tolerance = 0.0;
    bool commutator_ok = true;
};

/// A(f * eta_n) for each mollifier index, then the Gamma-limsup across n with radii 1/n.
PipelineResult mollified_generator_pipeline(const SemigroupEval& S, const GridFunction& f,
                                            const std::vector<int>& mollifier_sizes,
                                            const GeneratorModel& model, double commutator_time = 0.1,
                                            double commutator_tolerance = 1e-6);

struct ComparisonRow {
    std::size_t probe = 0;
    double t = 0.0;
    double max_violation = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool ordered = true;
};

/// Checks S_small(t)f <= S_big(t)f on the largest compact window.
ComparisonReport comparison_harness(const SemigroupEval& S_small, const SemigroupEval& S_big,
                                    const std::vector<GridFunction>& probes, const std::vector<double>& times,
                                    double tolerance = 1e-6);

struct SupersolutionOptions {
    std::vector<double> hs;              ///< empty: default_h_schedule(times.back())
    std::optional<WindowSchedule> windows;  ///< empty: point windows (delta = dx)
    double comp2_tolerance = 1e-2;
    double conclusion_tolerance = 1e-6;
    double quotient_ceiling = 1e6;
};

struct SupersolutionReport {
    bool initial_ok = false;
    double initial_gap = 0.0;       ///< max (f - u(0))
    bool comp_ok = false;
    double comp_negative_part = 0.0;  ///< max negative part of forward time quotients
    bool comp2_ok = false;
    double comp2_residual = 0.0;    ///< max of A u(t) - du/dt over times and window
    bool conclusion_ok = false;
    double conclusion_violation = 0.0;  ///< max (S(t)f - u(t))
    double min_margin = 0.0;        ///< min over t > 0 of min (u(t) - S(t)f)
    std::vector<std::string> failed_hypotheses;
};

SupersolutionReport supersolution_check(const SemigroupEval& S, const std::vector<double>& times,
                                        const std::vector<GridFunction>& u, const GridFunction& f,
                                        const SupersolutionOptions& options = {});

/// u(t_k) = S(t_k) f + rate * t_k on a uniform lattice of `steps` intervals over [0, T].
std::vector<GridFunction> perturbed_orbit(const SemigroupEval& S, const GridFunction& f,
                                          const std::vector<double>& times, double rate);
std::vector<double> uniform_times(double T, int steps = 16);

}  // namespace semilab
