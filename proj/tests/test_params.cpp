#include "doctest.h"
#include "modrop/params.hpp"

#include <cmath>

using namespace modrop;

TEST_CASE("half-periods for b = 0.8") {
    const auto p = make_params(0.8);
    CHECK(std::abs(p.omega - cplx{0.0, 0.4}) < 1e-15);
    CHECK(std::abs(p.omega_p - cplx{0.0, 0.625}) < 1e-15);
    CHECK(std::abs(p.omega_pp - cplx{0.0, 1.025}) < 1e-15);
    CHECK(std::abs(p.omega * p.omega_p + 0.25) < 1e-15);
    CHECK(std::abs(p.beta - 0.57661315) < 1e-8);
    CHECK(std::abs(p.b() - 0.8) < 1e-15);
}

TEST_CASE("swap_omegas is an involution and maps b to 1/b") {
    const auto p = make_params(0.8);
    const auto s = swap_omegas(p);
    CHECK(std::abs(s.b() - 1.25) < 1e-14);
    CHECK(std::abs(s.q - p.q_tilde) < 1e-15);
    CHECK(swap_omegas(s) == p);
    CHECK(std::abs(s.beta - p.beta) < 1e-15);
}

TEST_CASE("invalid b is rejected") {
    CHECK_THROWS_AS(make_params(0.0), DomainError);
    CHECK_THROWS_AS(make_params(-1.0), DomainError);
    CHECK_THROWS_AS(make_params(std::nan("")), DomainError);
    CHECK(params_warnings(make_params(1.0)).size() == 1);
    CHECK(params_warnings(make_params(0.8)).empty());
}

TEST_CASE("numerics validation") {
    const auto p = make_params(0.8);
    NumericsConfig n;
    CHECK_NOTHROW(n.validate(p));
    n.grid_points = 100;
    CHECK_THROWS_AS(n.validate(p), DomainError);
    n = NumericsConfig{};
    n.contour_lift = 10.0;
    CHECK_THROWS_AS(n.validate(p), DomainError);
    n = NumericsConfig{};
    n.kernel_lift = 0.9;
    CHECK_THROWS_AS(n.validate(p), DomainError);
    CHECK(n.tol(ToleranceClass::TwoCoord) == 1e-5);
}
