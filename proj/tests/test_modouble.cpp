#include "doctest.h"
#include "modrop/measure.hpp"
#include "modrop/modouble.hpp"

#include <cmath>

using namespace modrop;

namespace {

constexpr double kH = 1.0 / 16.0;
const SamplingSpec kSpec{4.0, 128};

double res(const FDOperator& a, const FDOperator& b) { return operator_residual(a, b, test_panel(1), kSpec, kH); }

}  // namespace

TEST_CASE("q-commutation of K with E and F") {
    const auto p = make_params(0.8);
    const auto G = generators({0.3, p});
    CHECK(res(G.K * G.E, p.q * (G.E * G.K)) < 1e-10);
    CHECK(res(G.K * G.F, (1.0 / p.q) * (G.F * G.K)) < 1e-10);
    // Negative control: the wrong power of q.
    CHECK(res(G.K * G.E, (1.0 / p.q) * (G.E * G.K)) > 1e-3);
}

TEST_CASE("tilde generators use the dual deformation parameter") {
    const auto p = make_params(0.8);
    const auto T = tilde_generators({0.3, p});
    CHECK(res(T.K * T.E, p.q_tilde * (T.E * T.K)) < 1e-10);
    CHECK(res(T.K * T.E, p.q * (T.E * T.K)) > 1e-3);
}

TEST_CASE("Casimir acts by its eigenvalue") {
    const auto p = make_params(0.8);
    const auto I = FDOperator::identity(1);
    for (cplx s : {cplx{0.0}, cplx{0.25}, cplx{-0.6}}) {
        const SpinParams sp{s, p};
        CHECK(res(casimir(sp), casimir_eigenvalue(sp) * I) < 1e-10);
    }
    CHECK(std::abs(casimir_eigenvalue({0.0, p}) - 4.0) < 1e-14);
    const SpinParams sp{0.25, p};
    CHECK(res(casimir(sp), casimir_eigenvalue({0.35, p}) * I) > 1e-3);
}

TEST_CASE("W = D_{-s}(p) maps pi_s to pi_{-s}") {
    const auto p = make_params(0.8);
    const auto g = std::make_shared<const GammaEvaluator>(p);
    const cplx s = 0.3;
    const auto W = intertwiner_W(g, s);
    const auto G = generators({s, p});
    const auto Gm = generators({-s, p});
    CHECK(res(W * G.E, Gm.E * W) < 1e-8);
    CHECK(res(W * G.F, Gm.F * W) < 1e-8);
    // W does not commute with the generators of a single representation.
    CHECK(res(W * G.E, G.E * W) > 1e-3);
}
