#include "doctest.h"
#include "modrop/specfun.hpp"

#include <cmath>

using namespace modrop;

namespace {

// Plain trapezoid on a different contour lift with a generous cutoff.
cplx gamma_reference(const ModularParams& p, cplx z) {
    const double delta = 1.2;
    const double h = 0.004;
    const double rate = p.im_omega_pp() - std::abs(z.imag());
    const double U = 45.0 / rate + 8.0;
    cplx sum{0.0, 0.0};
    for (double u = -U; u <= U; u += h) {
        const cplx t{u, delta};
        sum += std::exp(kI * t * z) / (t * std::sin(p.omega * t) * std::sin(p.omega_p * t));
    }
    return std::exp(-0.25 * h * sum);
}

}  // namespace

TEST_CASE("gamma matches an independent contour quadrature") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    for (cplx z : {cplx{0.3, 0.1}, cplx{-0.7, -0.5}, cplx{1.4, 0.6}, cplx{0.0, 0.0}, cplx{-2.0, 0.2}}) {
        const cplx ref = gamma_reference(p, z);
        CHECK(std::abs(g.gamma(z) / ref - 1.0) < 1e-9);
    }
}

TEST_CASE("gamma special values") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    CHECK(std::abs(g.gamma(0.0) * g.gamma(0.0) / std::exp(kI * p.beta) - 1.0) < 1e-12);
    CHECK(std::abs(g.gamma(p.omega_p) / g.gamma(-p.omega_p) - 2.0) < 1e-12);
    CHECK(std::abs(g.gamma(p.omega) / g.gamma(-p.omega) - 2.0) < 1e-12);
    CHECK(std::abs(g.gamma(10.0) - 1.0) < 1e-8);
    CHECK(g.accuracy_floor() < 1e-12);
}

TEST_CASE("difference and reflection equations hold far from the strip") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    for (cplx z : {cplx{0.2, 0.9}, cplx{-1.1, -1.7}, cplx{2.3, 2.4}, cplx{0.5, -0.3}}) {
        const cplx r1 = g.gamma(z + p.omega_p) / g.gamma(z - p.omega_p);
        CHECK(std::abs(r1 / (1.0 + std::exp(-kI * kPi * z / p.omega)) - 1.0) < 1e-10);
        const cplx r2 = g.gamma(z + p.omega) / g.gamma(z - p.omega);
        CHECK(std::abs(r2 / (1.0 + std::exp(-kI * kPi * z / p.omega_p)) - 1.0) < 1e-10);
        const cplx r3 = g.gamma(z) * g.gamma(-z);
        CHECK(std::abs(r3 / (std::exp(kI * p.beta) * std::exp(kI * kPi * z * z)) - 1.0) < 1e-10);
    }
}

TEST_CASE("gamma is symmetric in the two half-periods") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    const GammaEvaluator gs(swap_omegas(p));
    for (cplx z : {cplx{0.3, 0.1}, cplx{-0.9, 0.7}, cplx{1.5, -1.3}}) {
        CHECK(std::abs(g.gamma(z) / gs.gamma(z) - 1.0) < 1e-11);
    }
}

TEST_CASE("poles and zeros are reported") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    CHECK_THROWS_AS((void)g.gamma(-p.omega_pp), SingularityError);
    CHECK_THROWS_AS((void)g.gamma(p.omega_pp + 2.0 * p.omega), SingularityError);
    try {
        (void)g.D(0.5, -0.5 - p.omega_pp);
        FAIL("expected a singularity");
    } catch (const SingularityError& e) {
        CHECK(std::string(e.what()).find("z+a") != std::string::npos);
        CHECK(std::abs(e.lattice_point() + p.omega_pp) < 1e-12);
    }
    CHECK_THROWS_AS((void)g.gamma(cplx{std::nan(""), 0.0}), DomainError);
}

TEST_CASE("residue of gamma at -omega''") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    const double e = 1e-5;
    const cplx approx = 0.5 * e * (g.gamma(-p.omega_pp + e) - g.gamma(-p.omega_pp - e));
    CHECK(std::abs(approx / g.residue_at_pole() - 1.0) < 1e-8);
}

TEST_CASE("D is even and reduces to 1 at a = 0") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    for (cplx z : {cplx{0.4, 0.05}, cplx{-1.3, 0.2}}) {
        CHECK(std::abs(g.D(0.0, z) - 1.0) < 1e-13);
        CHECK(std::abs(g.D(0.3, z) / g.D(0.3, -z) - 1.0) < 1e-11);
    }
}

TEST_CASE("Fourier transform of D by quadrature matches the closed form") {
    const auto p = make_params(0.8);
    const GammaEvaluator g(p);
    const cplx as[] = {{0.3, -0.5}, {-0.2, -0.3}, {0.1, -0.8}, {0.0, -0.4}, {0.25, -0.6}};
    const cplx zs[] = {{0.2, 0.0}, {-0.7, 0.1}, {1.1, -0.05}};
    for (cplx a : as) {
        for (cplx z : zs) {
            const cplx lhs = g.fourier_D(a, z);
            const cplx rhs = g.D(-p.omega_pp - a, z);
            CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
        }
        CHECK(std::abs(g.A(a) * g.A(-p.omega_pp - a) - 1.0) < 1e-11);
    }
    CHECK_THROWS_AS((void)g.fourier_D(0.3, 0.1), ConvergenceError);
    CHECK_THROWS_AS((void)g.fourier_D(cplx{0.0, -1.2}, 0.1), DomainError);
}
