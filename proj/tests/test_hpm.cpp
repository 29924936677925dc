#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ihpm/hpm.hpp"

using ihpm::FourPointBC;
using ihpm::Polynomial;
using ihpm::residual_norm;
using ihpm::solve_quartic_term;
using ihpm::solve_second_term;
using ihpm::TwoPointBC;

TEST_CASE("quartic solver: zero forcing gives the boundary cubic") {
    // u'''' = 0 with u(0)=A, u'(0)=0, u(1)=1/2, u'(1)=0 for several A.
    for (const double A : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        const Polynomial u = solve_quartic_term({}, FourPointBC{A, 0.0, 0.5, 0.0});
        CHECK(u.degree() <= 3);
        CHECK(u.coeff(0) == Catch::Approx(A).margin(1e-14));
        CHECK(u.coeff(1) == 0.0);
        CHECK(u.coeff(2) == Catch::Approx(1.5 - 3.0 * A).margin(1e-13));
        CHECK(u.coeff(3) == Catch::Approx(2.0 * A - 1.0).margin(1e-13));
    }
    CHECK(solve_quartic_term({}, FourPointBC{}).is_zero());
}

TEST_CASE("quartic solver: constant forcing, homogeneous BCs") {
    // u'''' = 24 with all-zero boundary data: u = eta^2 (eta - 1)^2.
    const Polynomial u = solve_quartic_term(Polynomial{24.0}, FourPointBC{});
    CHECK(u == Polynomial{0.0, 0.0, 1.0, -2.0, 1.0});
}

TEST_CASE("quartic solver satisfies BCs and ODE for random forcings") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    std::uniform_real_distribution<double> bcval(-2.0, 2.0);
    std::uniform_int_distribution<int> deg(0, 7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(static_cast<size_t>(deg(rng)) + 1);
        for (double& v : c) v = coeff(rng);
        const Polynomial rhs(std::move(c));
        const FourPointBC bc{bcval(rng), bcval(rng), bcval(rng), bcval(rng)};
        const Polynomial u = solve_quartic_term(rhs, bc);

        CHECK(u(0.0) == Catch::Approx(bc.value0).margin(1e-12));
        CHECK(u.derivative()(0.0) == Catch::Approx(bc.slope0).margin(1e-12));
        CHECK(u(1.0) == Catch::Approx(bc.value1).margin(1e-12));
        CHECK(u.derivative()(1.0) == Catch::Approx(bc.slope1).margin(1e-12));
        CHECK(residual_norm(u, 4, rhs) <= 1e-10);
    }
}

TEST_CASE("second-order solver: linear profile and parabola") {
    CHECK(solve_second_term({}, TwoPointBC{1.0, 0.0}) == Polynomial{1.0, -1.0});
    CHECK(solve_second_term({}, TwoPointBC{}).is_zero());
    // u'' = 2 homogeneous: u = eta^2 - eta.
    CHECK(solve_second_term(Polynomial{2.0}, TwoPointBC{}) == Polynomial{0.0, -1.0, 1.0});
}

TEST_CASE("second-order solver satisfies BCs and ODE for random forcings") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    std::uniform_real_distribution<double> bcval(-2.0, 2.0);
    std::uniform_int_distribution<int> deg(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(static_cast<size_t>(deg(rng)) + 1);
        for (double& v : c) v = coeff(rng);
        const Polynomial rhs(std::move(c));
        const TwoPointBC bc{bcval(rng), bcval(rng)};
        const Polynomial u = solve_second_term(rhs, bc);

        CHECK(u(0.0) == Catch::Approx(bc.value0).margin(1e-12));
        CHECK(u(1.0) == Catch::Approx(bc.value1).margin(1e-12));
        CHECK(residual_norm(u, 2, rhs) <= 1e-10);
    }
}

TEST_CASE("residual_norm accepts only operator orders 2 and 4") {
    const Polynomial u{0.0, 1.0};
    CHECK_THROWS_AS(residual_norm(u, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(residual_norm(u, 1, {}), std::invalid_argument);
    CHECK(residual_norm(Polynomial{0.0, 0.0, 1.0}, 2, Polynomial{2.0}) == 0.0);
}
