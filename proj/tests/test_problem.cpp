#include <cmath>
#include <random>

#include <doctest.h>

#include "spldg/problem.hpp"

using namespace spldg;

TEST_CASE("example1 boundary values vanish") {
    for (double eps : {1e-2, 1e-8}) {
        const Problem pb = example1(eps);
        const ExactSolution& ex = *pb.exact;
        for (int s = 0; s <= 20; ++s) {
            const double t = s / 20.0;
            CHECK(std::abs(ex.u(0.0, t)) < 1e-12);
            CHECK(std::abs(ex.u(t, 0.0)) < 1e-12);
            CHECK(std::abs(ex.u(1.0, t)) < 1e-12);
            CHECK(std::abs(ex.u(t, 1.0)) < 1e-12);
        }
        CHECK(ex.u(0.3, 0.7) > 0.0);
    }
    CHECK(example1(1e-2).exact->u(0.3, 0.7) ==
          doctest::Approx(0.10136343088483944).epsilon(1e-13));
    CHECK_THROWS_AS(example1(0.0), std::invalid_argument);
}

TEST_CASE("example1 coercivity: b - div(a)/2 = 3/2 + 3y^2/2") {
    const Problem pb = example1(1e-4);
    for (double y : {0.0, 0.25, 0.5, 1.0}) {
        const double v = pb.b(0.3, y) - 0.5 * pb.div_a(0.3, y);
        CHECK(v == doctest::Approx(1.5 + 1.5 * y * y).epsilon(1e-13));
    }
    const CoercivityReport rep = verify_coercivity(pb);
    CHECK(rep.min_value == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(rep.at_y == doctest::Approx(0.0));
    CHECK(rep.ok);
}

TEST_CASE("coercivity report for user problems") {
    Problem constant;
    constant.epsilon = 1e-3;
    constant.a1 = [](double, double) { return 1.0; };
    constant.a2 = [](double, double) { return 1.0; };
    constant.b = [](double, double) { return 1.0; };
    constant.f = [](double, double) { return 0.0; };
    constant.alpha1 = constant.alpha2 = 1.0;
    constant.beta = 1.0;
    // no analytic derivatives: exercises the finite-difference divergence
    const CoercivityReport r1 = verify_coercivity(constant);
    CHECK(r1.min_value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r1.ok);

    Problem degenerate = constant;
    degenerate.b = [](double, double) { return 0.0; };
    degenerate.beta = 0.1;
    const CoercivityReport r2 = verify_coercivity(degenerate);
    CHECK(std::abs(r2.min_value) < 1e-8);
    CHECK(!r2.ok);  // flagged, not an error
}

TEST_CASE("manufactured forcing satisfies the PDE (finite-difference check)") {
    std::mt19937 gen(7);
    for (double eps : {1e-2, 1e-8}) {
        const Problem pb = example1(eps);
        const double margin = std::max(5.0 * eps, 5e-3);
        std::uniform_real_distribution<double> dist(0.01, 1.0 - margin);
        double max_f = 1.0, max_res = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const double x = dist(gen), y = dist(gen);
            max_f = std::max(max_f, std::abs(pb.f(x, y)));
            max_res = std::max(max_res, std::abs(pde_residual(pb, x, y)));
        }
        CHECK(max_res < 1e-6 * max_f);
    }
}
