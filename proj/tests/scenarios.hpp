#pragma once

#include <cmath>

#include "semilab/operators.hpp"

namespace testsupport {

/// Control model on the exact lattice kernel: a = 1, L = b^2/2, |b| <= 2.
inline semilab::StepOperator control_lattice_step() {
    using namespace semilab;
    return make_control_step(ControlCost::entropic(2.0, 0.05), Backend{KernelKind::lattice, {}});
}

/// Quadratic-phi Wasserstein model on the lattice kernel with lattice displacements |z| <= 2.
inline semilab::StepOperator wasserstein_lattice_step(double dx) {
    using namespace semilab;
    const auto model = ReferenceModel::brownian(1.0, Backend{KernelKind::lattice, {}});
    return make_wasserstein_step(model, PhiCost::quadratic(), WassersteinGrids{{}, std::lround(2.0 / dx)});
}

}  // namespace testsupport
