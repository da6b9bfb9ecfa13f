#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace semilab {

/// Nodes and weights for E[g(Z)], Z ~ N(0, 1).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Probabilists' Gauss-Hermite rule (Golub-Welsch), symmetrised, odd size.
    static QuadratureRule gauss_hermite(std::size_t n = 33);
    std::size_t size() const { return nodes.size(); }
};

struct GaussianMeasure {
    double mean = 0.0;
    double variance = 0.0;
};

struct AtomicMeasure {
    std::vector<double> atoms;
    std::vector<double> weights;

    double mass() const;
    double moment(double p) const;
};

using Measure = std::variant<GaussianMeasure, AtomicMeasure>;

/// Gaussian pushed to quadrature atoms: mean + sqrt(variance) * node.
AtomicMeasure discretize(const GaussianMeasure& g, const QuadratureRule& q);

/**
 * Law of the continuous-time nearest-neighbour walk on the lattice dx*Z with
 * jump rates up/down, run for time t. Weights are indexed by offset
 * k = first_offset + j and truncated where both tails fall below 1e-20.
 */
struct LatticeKernel {
    long first_offset = 0;
    std::vector<double> weights;
};

/// Rates realising mean drift b and diffusion a (centred when nonnegative, upwind otherwise).
struct LatticeRates {
    double up = 0.0;
    double down = 0.0;
};
LatticeRates lattice_rates(double a, double b, double dx);
LatticeKernel lattice_kernel(double up_rate, double down_rate, double t);

/// p-Wasserstein distance between atomic measures via the quantile coupling.
double wasserstein_p(const AtomicMeasure& nu, const AtomicMeasure& mu, double p);
/// W2 for Gaussian or atomic pairs; mixed pairs are unsupported.
double w2_1d(const Measure& nu, const Measure& mu);

/// KL(nu || mu); +inf when nu is not absolutely continuous with respect to mu.
double relative_entropy(const Measure& nu, const Measure& mu);

}  // namespace semilab
