#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "semilab/measures.hpp"

using namespace semilab;

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
    auto q = QuadratureRule::gauss_hermite(33);
    REQUIRE(q.size() == 33);
    CHECK(q.nodes[16] == 0.0);
    double sum = 0.0;
    for (double w : q.weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    // E Z^{2k} = (2k-1)!!
    double dfact = 1.0;
    for (int k = 1; k <= 10; ++k) {
        dfact *= (2 * k - 1);
        double m = 0.0, odd = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            m += q.weights[i] * std::pow(q.nodes[i], 2 * k);
            odd += q.weights[i] * std::pow(q.nodes[i], 2 * k - 1);
        }
        CHECK(m == doctest::Approx(dfact).epsilon(1e-10));
        CHECK(std::abs(odd) < 1e-12 * dfact);
    }
    CHECK_THROWS_AS(QuadratureRule::gauss_hermite(32), std::domain_error);
}

TEST_CASE("discretised Gaussians keep mean and variance") {
    auto a = discretize(GaussianMeasure{0.3, 0.5}, QuadratureRule::gauss_hermite(33));
    CHECK(a.mass() == doctest::Approx(1.0));
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) mean += a.weights[i] * a.atoms[i];
    for (std::size_t i = 0; i < a.atoms.size(); ++i) var += a.weights[i] * (a.atoms[i] - mean) * (a.atoms[i] - mean);
    CHECK(mean == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(var == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("lattice kernel is the Skellam law") {
    const double up = 3.0, down = 1.0, t = 0.7;
    auto k = lattice_kernel(up, down, t);
    double mass = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t j = 0; j < k.weights.size(); ++j) {
        const double off = static_cast<double>(k.first_offset + static_cast<long>(j));
        mass += k.weights[j];
        mean += k.weights[j] * off;
        second += k.weights[j] * off * off;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean == doctest::Approx((up - down) * t).epsilon(1e-12));
    CHECK(second - mean * mean == doctest::Approx((up + down) * t).epsilon(1e-12));
    // independent oracle: P(0) = e^{-(u+d)t} sum_j (ut)^j (dt)^j / (j!)^2
    double p0 = 0.0, term = 1.0;
    for (int j = 0; j < 60; ++j) {
        if (j > 0) term *= (up * t) * (down * t) / (j * j);
        p0 += term;
    }
    p0 *= std::exp(-(up + down) * t);
    CHECK(k.weights[static_cast<std::size_t>(-k.first_offset)] == doctest::Approx(p0).epsilon(1e-12));

    auto r = lattice_rates(1.0, 0.0, 0.1);
    CHECK(r.up == doctest::Approx(50.0));
    CHECK(r.down == doctest::Approx(50.0));
}

TEST_CASE("w2_1d examples") {
    const double t = 0.5;
    CHECK(w2_1d(GaussianMeasure{0.0, t}, GaussianMeasure{0.0, t}) == 0.0);
    CHECK(w2_1d(GaussianMeasure{0.7, t}, GaussianMeasure{0.0, t}) == doctest::Approx(0.7).epsilon(1e-14));
    AtomicMeasure a{{0.0, 1.0}, {0.5, 0.5}}, b{{0.0, 2.0}, {0.5, 0.5}};
    // brute force over both couplings of two equal atoms
    const double c1 = 0.5 * (0.0 * 0.0) + 0.5 * (1.0 * 1.0);
    const double c2 = 0.5 * (2.0 * 2.0) + 0.5 * (1.0 * 1.0);
    CHECK(w2_1d(a, b) == doctest::Approx(std::sqrt(std::min(c1, c2))).epsilon(1e-14));
    CHECK(w2_1d(a, b) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(w2_1d(a, a) == 0.0);
    AtomicMeasure heavy{{0.0}, {2.0}};
    CHECK_THROWS_AS(w2_1d(a, heavy), std::domain_error);
    CHECK_THROWS_AS(w2_1d(a, GaussianMeasure{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("relative entropy examples") {
    const double t = 0.5;
    CHECK(relative_entropy(GaussianMeasure{0.0, t}, GaussianMeasure{0.0, t}) == 0.0);
    CHECK(relative_entropy(GaussianMeasure{0.6, t}, GaussianMeasure{0.0, t}) ==
          doctest::Approx(0.36 / (2.0 * t)).epsilon(1e-14));
    AtomicMeasure mu{{0.0, 1.0}, {0.5, 0.5}}, nu{{0.0, 2.0}, {0.5, 0.5}}, nu2{{0.0, 1.0}, {0.25, 0.75}};
    CHECK(relative_entropy(nu, mu) == std::numeric_limits<double>::infinity());
    CHECK(relative_entropy(mu, mu) == 0.0);
    CHECK(relative_entropy(nu2, mu) ==
          doctest::Approx(0.25 * std::log(0.5) + 0.75 * std::log(1.5)).epsilon(1e-14));
}
