#include "doctest.h"
#include "modrop/lax.hpp"
#include "modrop/measure.hpp"

#include <cmath>

using namespace modrop;

namespace {

constexpr double kH = 1.0 / 16.0;
const SamplingSpec kSpec{4.0, 128};

double mres(const OperatorMatrix& a, const OperatorMatrix& b) {
    return matrix_residual(a, b, test_panel(1), kSpec, kH);
}

}  // namespace

TEST_CASE("spin and (u1, u2) parametrisations are inverse") {
    const auto p = make_params(0.8);
    const cplx u{0.3, 0.05};
    const cplx s{0.4, -0.1};
    const auto [u1, u2] = spin_to_u(p, u, s);
    CHECK(std::abs((u1 - u2) - s) < 1e-15);
    const auto [ub, sb] = u_to_spin(p, u1, u2);
    CHECK(std::abs(ub - u) < 1e-15);
    CHECK(std::abs(sb - s) < 1e-15);

    const auto t = make_spectral_tuple(p, 0.3, -0.2, 0.4, 0.7);
    const auto back = tuple_to_spins(p, t);
    CHECK(std::abs(back[0] - 0.3) < 1e-15);
    CHECK(std::abs(back[1] + 0.2) < 1e-15);
    CHECK(std::abs(back[2] - 0.4) < 1e-15);
    CHECK(std::abs(back[3] - 0.7) < 1e-15);
}

TEST_CASE("L agrees with its factorised form") {
    const auto p = make_params(0.8);
    const auto [u1, u2] = spin_to_u(p, 0.2, 0.5);
    CHECK(mres(build_L12(p, u1, u2), build_L_factorized(p, u1, u2)) < 1e-12);
    CHECK(mres(build_L12(p, u1, u2), build_L_factorized(p, u2, u1)) > 1e-3);
}

TEST_CASE("D(p) exchanges the spectral parameters of L") {
    const auto p = make_params(0.8);
    const auto g = std::make_shared<const GammaEvaluator>(p);
    const auto [u1, u2] = spin_to_u(p, 0.1, 0.3);
    const auto L12 = build_L12(p, u1, u2);
    const auto L21 = build_L12(p, u2, u1);
    CHECK(mres(d_of_p(g, 1, 0, u2 - u1) * L12, L21 * d_of_p(g, 1, 0, u2 - u1)) < 1e-8);
    // Wrong index sign.
    CHECK(mres(d_of_p(g, 1, 0, u1 - u2) * L12, L21 * d_of_p(g, 1, 0, u1 - u2)) > 1e-3);
}

TEST_CASE("Fresnel conjugation maps L+ to L-") {
    const auto p = make_params(0.8);
    const cplx u = 0.15;
    CHECK(mres(fresnel(1, 0, 1) * build_Lplus(p, u) * fresnel(1, 0, -1), build_Lminus(p, u)) < 1e-10);
    CHECK(mres(fresnel(1, 0, -1) * build_Lplus(p, u) * fresnel(1, 0, 1), build_Lminus(p, u)) > 1e-3);
}

TEST_CASE("ell is the large-shift limit of L") {
    const auto p = make_params(0.8);
    const cplx u = 0.3;
    const cplx s = 0.4;
    const double w = 3.0;
    const cplx pre = std::exp(-kI * kPi * w / p.omega);
    const auto shifted = pre * (op_shift(1, 0, w) * build_L(p, u + w, s) * op_shift(1, 0, -w));
    CHECK(mres(shifted, build_ell(p, u, s)) < 1e-8);
    CHECK(mres(shifted, build_ellbar(p, u, s)) > 0.1);
}
