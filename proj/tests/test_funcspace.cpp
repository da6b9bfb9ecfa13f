#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "semilab/funcspace.hpp"
#include "support.hpp"

using namespace semilab;
using testsupport::slope;

TEST_CASE("weighted sup norm examples") {
    auto g = WeightedGrid::uniform(2.0, 0.001, WeightedGrid::Weight::decaying, {1.0, 2.0});
    auto f = GridFunction::from(g, [](double x) { return x; });
    double oracle = 0.0;
    for (double x = -2.0; x <= 2.0; x += 1e-5) oracle = std::max(oracle, std::abs(x) / (1.0 + x * x));
    CHECK(weighted_sup_norm(f) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(weighted_sup_norm(f) == doctest::Approx(0.5).epsilon(1e-12));

    auto u = WeightedGrid::uniform(4.0, 0.1);
    CHECK(weighted_sup_norm(GridFunction::constant(u, 3.0)) == 3.0);
    CHECK(weighted_sup_norm(GridFunction::constant(u, -1.0), NormPart::positive) == 0.0);
}

TEST_CASE("full norm rejects sentinels, positive part ignores them") {
    auto g = WeightedGrid::uniform(1.0, 0.5, WeightedGrid::Weight::unit, {1.0});
    GridFunction u(g, {1.0, kNegInf, -3.0, 2.0, 0.0}, Klass::usc);
    CHECK_THROWS_AS(weighted_sup_norm(u), std::domain_error);
    CHECK(weighted_sup_norm(u, NormPart::positive) == 2.0);
}

TEST_CASE("norm homogeneity and triangle inequality") {
    auto g = WeightedGrid::uniform(6.0, 0.05, WeightedGrid::Weight::decaying);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testsupport::random_values(g, rng, -3.0, 3.0);
        auto h = testsupport::random_values(g, rng, -3.0, 3.0);
        for (double lam : {-2.0, 0.5, 3.0}) {
            CHECK(weighted_sup_norm(lam * f) == doctest::Approx(std::abs(lam) * weighted_sup_norm(f)).epsilon(1e-14));
        }
        CHECK(weighted_sup_norm(f + h) <= weighted_sup_norm(f) + weighted_sup_norm(h) + 1e-14);
    }
}

TEST_CASE("mixed convergence examples") {
    auto g = WeightedGrid::uniform(4.0, 0.05);
    auto f = testsupport::bump(g);
    SUBCASE("constant sequence") {
        auto r = mixed_convergence_report({f, f, f}, f, 1e-9);
        CHECK(r.converged);
        for (double e : r.tail_errors) CHECK(e == 0.0);
    }
    SUBCASE("x/n tends to zero uniformly") {
        std::vector<GridFunction> fs;
        for (int n = 1; n <= 1000; n *= 10) fs.push_back(GridFunction::from(g, [n](double x) { return x / n; }));
        for (int n = 2000; n <= 100000; n *= 2) fs.push_back(GridFunction::from(g, [n](double x) { return x / n; }));
        auto r = mixed_convergence_report(fs, GridFunction::constant(g, 0.0), 1e-3);
        CHECK(r.converged);
    }
    SUBCASE("escaping bump converges in the mixed sense only") {
        auto w = WeightedGrid::uniform(16.0, 0.05, WeightedGrid::Weight::decaying);
        std::vector<GridFunction> fs;
        for (int n = 1; n <= 15; ++n) fs.push_back(testsupport::bump(w, n, 0.3));
        auto zero = GridFunction::constant(w, 0.0);
        auto r = mixed_convergence_report(fs, zero, 1e-6);
        CHECK(r.converged);
        CHECK(r.kappa_bound <= 1.0);
        // the plain sup error of every term is still 1
        for (const auto& fn : fs) CHECK(sup_on_window(fn - zero, 16.0) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(mixed_convergence_report({}, f, 1e-3), std::domain_error);
}

TEST_CASE("mollifier has unit mass and compact support") {
    Mollifier m(4);
    CHECK(m.profile_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.profile(1.0) == 0.0);
    CHECK(m.profile(-1.5) == 0.0);
    for (double y = -1.0; y <= 1.0; y += 0.01) CHECK(m.profile(y) >= 0.0);
    double s = 0.0;
    for (double w : m.lattice_weights(0.01)) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mollify examples") {
    auto g = WeightedGrid::uniform(4.0, 0.01);
    Mollifier m(4);
    auto c = mollify(GridFunction::constant(g, 2.5), m);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(2.5).epsilon(1e-14));

    auto lin = mollify(GridFunction::from(g, [](double x) { return x; }), m);
    const auto [lo, hi] = g->window(3.0);
    for (std::size_t i = lo; i <= hi; ++i) CHECK(lin[i] == doctest::Approx(g->x(i)).epsilon(1e-12));

    // brute-force integral of |y| eta_4(y) with an independent fine Simpson rule
    const auto eta = [](double y) { return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0; };
    const int N = 200000;
    double mass = 0.0, first = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double y = -1.0 + 2.0 * k / N;
        const double w = (k == 0 || k == N) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        mass += w * eta(y);
        first += w * std::abs(y) * eta(y);
    }
    const double oracle = first / mass / 4.0;
    auto absm = mollify(GridFunction::from(g, [](double x) { return std::abs(x); }), m);
    CHECK(absm[g->center()] > 0.0);
    CHECK(absm[g->center()] == doctest::Approx(oracle).epsilon(2e-3));

    auto narrow = WeightedGrid::uniform(0.1, 0.05, WeightedGrid::Weight::unit, {0.1});
    CHECK_THROWS_AS(mollify(GridFunction::constant(narrow, 1.0), Mollifier(1)), std::domain_error);
}

TEST_CASE("mollify is monotone, contracting and converges for Lipschitz f") {
    auto g = WeightedGrid::uniform(4.0, 0.005);
    std::mt19937_64 rng(11);
    Mollifier m(8);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = testsupport::random_smooth(g, rng);
        auto d = testsupport::random_values(g, rng, 0.0, 1.0);
        auto h = f + d;
        auto mf = mollify(f, m), mh = mollify(h, m);
        for (std::size_t i = 0; i < g->size(); ++i) CHECK(mf[i] <= mh[i] + 1e-15);
        CHECK(weighted_sup_norm(mh - mf) <= weighted_sup_norm(h - f) + 1e-14);
    }
    auto absf = GridFunction::from(g, [](double x) { return std::abs(x); });
    double prev = 1e9;
    for (int n : {4, 8, 16, 32}) {
        const double err = sup_on_window(mollify(absf, Mollifier(n)) - absf, 2.0);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("cutoff and truncate") {
    auto g = WeightedGrid::uniform(4.0, 0.05);
    Cutoff c(1, g);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double x = g->x(i), v = c.values()[i];
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        if (std::abs(x) <= 1.0) CHECK(v == 1.0);
        if (std::abs(x) >= 2.0) CHECK(v == 0.0);
    }
    auto one = truncate(GridFunction::constant(g, 1.0), c);
    CHECK(one.identical(c.values()));
    auto f = testsupport::bump(g, 0.3);
    auto t = truncate(f, c);
    const auto [lo, hi] = g->window(1.0);
    for (std::size_t i = lo; i <= hi; ++i) CHECK(t[i] == f[i]);
    auto sq = truncate(GridFunction::from(g, [](double x) { return x * x; }), c);
    CHECK(sq.sample(2.0) == 0.0);
    CHECK(sq.sample(-2.0) == 0.0);
}

TEST_CASE("finite-difference stencils") {
    auto g = WeightedGrid::uniform(4.0, 0.05);
    auto sq = fd_derivative(GridFunction::from(g, [](double x) { return x * x; }), 2);
    for (std::size_t i = 1; i + 1 < g->size(); ++i) CHECK(sq[i] == doctest::Approx(2.0).epsilon(1e-9));
    auto lin = fd_derivative(GridFunction::from(g, [](double x) { return x; }), 1);
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(lin[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fd_derivative(lin, 3), std::invalid_argument);

    std::vector<double> dxs{0.1, 0.05, 0.025, 0.0125}, e_sin, e1, e2;
    for (double dx : dxs) {
        auto h = WeightedGrid::uniform(4.0, dx);
        auto s = fd_derivative(GridFunction::from(h, [](double x) { return std::sin(x); }), 1);
        e_sin.push_back(std::abs(s[h->center()] - 1.0));
        auto b = testsupport::bump(h, 0.2);
        auto d1 = fd_derivative(b, 1), d2 = fd_derivative(b, 2);
        auto ex1 = GridFunction::from(h, [](double x) { return -2.0 * (x - 0.2) * std::exp(-(x - 0.2) * (x - 0.2)); });
        auto ex2 = GridFunction::from(h, [](double x) {
            const double y = x - 0.2;
            return (4.0 * y * y - 2.0) * std::exp(-y * y);
        });
        e1.push_back(weighted_sup_norm(d1 - ex1));
        e2.push_back(weighted_sup_norm(d2 - ex2));
    }
    CHECK(slope(dxs, e_sin) >= 1.9);
    CHECK(slope(dxs, e1) >= 1.9);
    CHECK(slope(dxs, e2) >= 1.9);
}
