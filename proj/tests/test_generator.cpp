#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "generator_probes.hpp"
#include "semilab/chernoff.hpp"
#include "semilab/funcspace.hpp"
#include "semilab/gamma.hpp"
#include "semilab/generator.hpp"
#include "support.hpp"

using namespace semilab;

namespace {

const Backend kLattice{KernelKind::lattice, {}};

GridPtr grid() { return WeightedGrid::uniform(8.0, 0.02); }

GridFunction entropic_generator_exact(const GridPtr& g, double theta) {
    // 0.5 f'' + theta/2 f'^2 for f = exp(-x^2)
    return GridFunction::from(g, [theta](double x) {
        const double e = std::exp(-x * x);
        const double d1 = -2.0 * x * e, d2 = (4.0 * x * x - 2.0) * e;
        return 0.5 * d2 + 0.5 * theta * d1 * d1;
    });
}

}  // namespace

TEST_CASE("semigroup evaluator caches and fixes S(0)") {
    auto g = grid();
    auto f = testsupport::bump(g);
    auto S = SemigroupEval::entropic();
    CHECK(S(0.0, f).identical(f));
    auto a = S(0.3, f);
    auto b = S(0.3, f);
    CHECK(a.identical(b));
    CHECK(S.cache_size() == 1);
    CHECK_THROWS_AS(S(-0.1, f), std::domain_error);
}

TEST_CASE("difference_quotient examples") {
    auto g = grid();
    const auto [lo, hi] = g->window(2.0);
    auto heat = SemigroupEval::heat(1.0, kLattice);
    auto sq = GridFunction::from(g, [](double x) { return x * x; });
    for (double h : default_h_schedule()) {
        auto q = difference_quotient(heat, sq, h);
        for (std::size_t i = lo; i <= hi; ++i) CHECK(q[i] == doctest::Approx(1.0).epsilon(1e-9));
    }
    // half-log normalisation: theta x -> theta x + theta^2 t
    auto ent2 = SemigroupEval::entropic(Backend{}, 2.0);
    auto lin = GridFunction::from(g, [](double x) { return 0.7 * x; });
    for (double h : default_h_schedule()) {
        auto q = difference_quotient(ent2, lin, h);
        for (std::size_t i = lo; i <= hi; ++i) CHECK(q[i] == doctest::Approx(0.49).epsilon(1e-8));
    }
    auto idq = difference_quotient(SemigroupEval::identity(), testsupport::bump(g), 0.1);
    CHECK(weighted_sup_norm(idq) == 0.0);
}

TEST_CASE("gamma_generator examples") {
    auto g = grid();
    SUBCASE("smooth probe in the entropic model") {
        auto f = testsupport::bump(g);
        auto S = SemigroupEval::entropic(kLattice);
        const auto hs = default_h_schedule();
        auto A = gamma_generator(S, f, hs, WindowSchedule(std::vector<double>(hs.size(), g->dx())));
        const double tol = 2.0 * (hs.back() + g->dx());
        CHECK(sup_on_window(A - entropic_generator_exact(g, 1.0), 2.0) <= tol);
    }
    SUBCASE("kink under the shift semigroup") {
        auto f = GridFunction::from(g, [](double x) { return std::min(std::abs(x), 4.0); });
        auto A = gamma_generator(SemigroupEval::shift(1.0), f, default_h_schedule(0.1));
        CHECK(A[g->center()] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(A.sample(1.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(A.sample(-1.0) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("identity family") {
        auto A = gamma_generator(SemigroupEval::identity(), testsupport::bump(g), default_h_schedule());
        CHECK(weighted_sup_norm(A) == 0.0);
    }
    SUBCASE("quotients unbounded above are rejected") {
        auto S = SemigroupEval::heat(1.0, kLattice);
        CHECK_THROWS_AS(gamma_generator(S, testsupport::root_probe(g), default_h_schedule()), std::domain_error);
        CHECK_NOTHROW(gamma_generator(S, testsupport::root_probe(g), default_h_schedule(), std::nullopt, true));
    }
}

TEST_CASE("gamma_generator equals the quotient limit at continuity points") {
    auto g = grid();
    auto S = SemigroupEval::entropic(kLattice);
    auto f = GridFunction::from(g, [](double x) { return std::sin(x) * std::exp(-x * x / 4.0); });
    const auto hs = default_h_schedule();
    auto A = gamma_generator(S, f, hs);
    auto last = difference_quotient(S, f, hs.back());
    const double delta = parabolic_windows(*g, hs).radii().back();
    const double tol = discrete_lipschitz(last, 8.0) * delta + 1e-12;
    CHECK(sup_on_window(A - last, 4.0) <= tol);
}

TEST_CASE("Lipschitz-set membership") {
    auto g = grid();
    const auto hs = default_h_schedule();
    auto cc = ControlCost::entropic();
    std::vector<SemigroupEval> evals{SemigroupEval::hjb(cc, hjb_stable_dt(cc, g->dx())),
                                     SemigroupEval::entropic(kLattice)};
    for (const auto& S : evals) {
        CAPTURE(S.name());
        for (const auto& f : testsupport::smooth_probes(g)) {
            CHECK(lipschitz_membership(S, f, Side::upper, hs).member == Membership::yes);
        }
        CHECK(lipschitz_membership(S, testsupport::root_probe(g), Side::upper, hs).member == Membership::no);
    }
    auto zero = lipschitz_membership(evals[0], GridFunction::constant(g, 0.0), Side::upper, hs);
    CHECK(zero.member == Membership::yes);
    CHECK(zero.c_estimate == 0.0);

    // symmetric classification for the control model
    for (const auto& f : testsupport::smooth_probes(g)) {
        CHECK(lipschitz_membership(evals[0], f, Side::symmetric, hs).member == Membership::yes);
    }
    CHECK(lipschitz_membership(evals[0], testsupport::root_probe(g), Side::symmetric, hs).member == Membership::no);

    auto heat = SemigroupEval::heat(1.0, kLattice);
    CHECK(lipschitz_membership(heat, testsupport::root_probe(g), Side::full, hs).member == Membership::no);
}

TEST_CASE("upper Lipschitz set is invariant along the orbit") {
    auto g = grid();
    auto S = SemigroupEval::entropic(kLattice);
    const auto hs = default_h_schedule();
    for (const auto& f : testsupport::smooth_probes(g)) {
        REQUIRE(lipschitz_membership(S, f, Side::upper, hs).member == Membership::yes);
        for (double t : {0.25, 0.5}) CHECK(lipschitz_membership(S, S(t, f), Side::upper, hs).member == Membership::yes);
    }
}

TEST_CASE("smooth generator oracle examples") {
    auto g = grid();
    auto f = testsupport::bump(g);
    CHECK(sup_on_window(smooth_generator_oracle(f, GeneratorModel::entropic()) - entropic_generator_exact(g, 1.0), 4.0) <=
          1e-3);

    const double r = 0.6, b0 = 0.3, theta = -1.2;
    auto lin = GridFunction::from(g, [theta](double x) { return theta * x; });
    auto pert = GeneratorModel::perturbation(ReferenceModel::transport(b0), PhiCost::ball(r));
    auto A = smooth_generator_oracle(lin, pert);
    const auto [lo, hi] = g->window(4.0);
    for (std::size_t i = lo; i <= hi; ++i) CHECK(A[i] == doctest::Approx(b0 * theta + r * std::abs(theta)).epsilon(1e-12));

    auto c = GridFunction::constant(g, 2.0);
    CHECK(weighted_sup_norm(smooth_generator_oracle(c, GeneratorModel::control(ControlCost::entropic()))) == 0.0);
    CHECK(weighted_sup_norm(smooth_generator_oracle(
              c, GeneratorModel::perturbation(ReferenceModel::brownian(), PhiCost::quadratic()))) == 0.0);

    GeneratorModel broken;
    broken.kind = GeneratorModel::Kind::perturbation;
    CHECK_THROWS_AS(smooth_generator_oracle(c, broken), std::domain_error);
}

TEST_CASE("first-order decay of quotients towards the oracle") {
    auto g = grid();
    auto cc = ControlCost::entropic();
    std::vector<double> hs;
    for (int k = 3; k <= 8; ++k) hs.push_back(std::ldexp(1.0, -k));
    struct Case {
        SemigroupEval S;
        GeneratorModel model;
    };
    std::vector<Case> cases{{SemigroupEval::entropic(kLattice), GeneratorModel::entropic()},
                            {SemigroupEval::hjb(cc, hjb_stable_dt(cc, g->dx())), GeneratorModel::control(cc)}};
    for (const auto& c : cases) {
        for (const auto& f : testsupport::smooth_probes(g)) {
            const auto oracle = smooth_generator_oracle(f, c.model);
            std::vector<double> errs;
            for (double h : hs) errs.push_back(sup_on_window(difference_quotient(c.S, f, h) - oracle, 2.0));
            CHECK(testsupport::slope(hs, errs) >= 0.8);
            CHECK(errs.back() <= 1e-2);
        }
    }
}

TEST_CASE("mollified generator pipeline") {
    auto g = grid();
    auto S = SemigroupEval::entropic(kLattice);
    const std::vector<int> sizes{2, 4, 8, 16};
    SUBCASE("smooth probe") {
        auto f = testsupport::bump(g);
        auto res = mollified_generator_pipeline(S, f, sizes, GeneratorModel::entropic());
        const auto Af = smooth_generator_oracle(f, GeneratorModel::entropic());
        CHECK(sup_on_window(res.sequence.back() - Af, 4.0) <= 0.05);
        const double tol = discrete_lipschitz(Af, 8.0) * (1.0 / sizes.back()) + 0.05;
        CHECK(sup_on_window(res.limit - Af, 4.0) <= tol);
        CHECK(res.commutator_ok);
    }
    SUBCASE("kink probe") {
        auto f = GridFunction::from(g, [](double x) { return std::min(std::abs(x), 4.0); });
        auto res = mollified_generator_pipeline(S, f, sizes, GeneratorModel::entropic());
        // away from the kink the Hamiltonian is (f')^2 / 2 = 1/2
        for (double x : {-2.0, -1.0, 1.0, 2.0}) CHECK(res.limit.sample(x) == doctest::Approx(0.5).epsilon(1e-9));
        // at the kink the mollified Laplacian grows like n; the lattice hull also singles out 0
        const double at0 = res.limit[g->center()];
        CHECK(at0 >= res.sequence.front()[g->center()]);
        CHECK(at0 > 10.0);
        const auto ham = smooth_generator_oracle(f, GeneratorModel::entropic());
        const auto hull = usc_hull_via_averages(ham);
        CHECK(hull.hull[g->center()] > 10.0);
        CHECK(hull.hull.sample(1.0) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("truncation stays below the Gamma-generator near the origin") {
        auto f = GridFunction::from(g, [](double x) { return std::cos(x) * std::exp(-x * x / 8.0); });
        const auto hs = default_h_schedule();
        auto AG = gamma_generator(S, f, hs, WindowSchedule(std::vector<double>(hs.size(), g->dx())));
        for (int n : {1, 2, 3}) {
            auto fn = truncate(f, Cutoff(n, g));
            auto An = smooth_generator_oracle(fn, GeneratorModel::entropic());
            CHECK(max_difference_on_window(An, AG, 1.0) <= 2.0 * (hs.back() + g->dx()));
        }
    }
}

TEST_CASE("oracle sequences of mollified probes dominate the Gamma-generator") {
    auto g = grid();
    auto S = SemigroupEval::entropic(kLattice);
    auto f = GridFunction::from(g, [](double x) { return std::sin(x) * std::exp(-x * x / 4.0); });
    std::vector<GridFunction> seq;
    std::vector<double> radii;
    for (int n : {2, 4, 8, 16}) {
        seq.push_back(smooth_generator_oracle(mollify(f, Mollifier(n)), GeneratorModel::entropic()));
        radii.push_back(1.0 / n);
    }
    auto upper = gamma_limsup(seq, WindowSchedule(radii));
    const auto hs = default_h_schedule();
    auto AG = gamma_generator(S, f, hs, WindowSchedule(std::vector<double>(hs.size(), g->dx())));
    CHECK(max_difference_on_window(AG, upper, 4.0) <= 2.0 * (hs.back() + g->dx()));
}

TEST_CASE("comparison harness examples") {
    auto g = WeightedGrid::uniform(8.0, 0.05);
    // the steep probe needs controls beyond |b| = 1
    const std::vector<GridFunction> probes{
        testsupport::bump(g), GridFunction::from(g, [](double x) { return std::clamp(x, -1.0, 1.0); }),
        GridFunction::from(g, [](double x) { return 3.0 * std::exp(-x * x); })};
    const std::vector<double> times{0.1, 0.25, 0.5};
    const double h = 1.0 / 32.0;
    auto small = SemigroupEval::chernoff(make_control_step(ControlCost::entropic(1.0, 0.05), kLattice), h);
    auto big = SemigroupEval::chernoff(make_control_step(ControlCost::entropic(2.0, 0.05), kLattice), h);
    auto r1 = comparison_harness(small, big, probes, times);
    CHECK(r1.ordered);
    auto r_rev = comparison_harness(big, small, probes, times);
    CHECK_FALSE(r_rev.ordered);

    auto model = ReferenceModel::brownian();
    auto R = SemigroupEval::chernoff(make_reference_step(model), h);
    auto J = SemigroupEval::chernoff(make_drift_step(model, PhiCost::quadratic(), symmetric_grid(2.0, 0.05)), h);
    CHECK(comparison_harness(R, J, probes, times).ordered);

    auto same = comparison_harness(big, big, probes, times);
    CHECK(same.ordered);
    CHECK(same.max_violation == 0.0);
}

TEST_CASE("supersolution harness examples") {
    auto g = WeightedGrid::uniform(8.0, 0.02);
    auto S = SemigroupEval::entropic(kLattice);
    auto f = testsupport::bump(g);
    const auto times = uniform_times(0.25, 16);
    SUBCASE("the orbit itself") {
        auto rep = supersolution_check(S, times, perturbed_orbit(S, f, times, 0.0), f);
        CHECK(rep.failed_hypotheses.empty());
        CHECK(rep.conclusion_ok);
        CHECK(std::abs(rep.conclusion_violation) <= 1e-12);
    }
    SUBCASE("strict supersolution") {
        auto rep = supersolution_check(S, times, perturbed_orbit(S, f, times, 0.1), f);
        CHECK(rep.failed_hypotheses.empty());
        CHECK(rep.conclusion_ok);
        CHECK(rep.min_margin > 0.0);
        CHECK(rep.min_margin == doctest::Approx(0.1 * times[1]).epsilon(1e-9));
    }
    SUBCASE("strict subsolution is attributed to comp2") {
        auto rep = supersolution_check(S, times, perturbed_orbit(S, f, times, -0.1), f);
        CHECK_FALSE(rep.comp2_ok);
        CHECK_FALSE(rep.conclusion_ok);
        CHECK(rep.failed_hypotheses == std::vector<std::string>{"comp2"});
    }
    auto u = perturbed_orbit(S, f, times, 0.0);
    auto bad_times = times;
    std::swap(bad_times[2], bad_times[3]);
    CHECK_THROWS_AS(supersolution_check(S, bad_times, u, f), std::domain_error);
}
