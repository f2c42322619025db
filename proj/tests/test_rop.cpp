#include "doctest.h"
#include "modrop/measure.hpp"
#include "modrop/rop.hpp"

#include <cmath>

using namespace modrop;

namespace {

constexpr double kH = 1.0 / 16.0;
const SamplingSpec kSpec{4.0, 64};

std::shared_ptr<const GammaEvaluator> evaluator() {
    static auto g = std::make_shared<const GammaEvaluator>(make_params(0.8));
    return g;
}

double grid_res(const FDOperator& a, const FDOperator& b, double L, int N) {
    double worst = 0.0;
    for (const auto& phi : test_panel(2)) {
        EvalContext ctx(kH);
        const GridData G = to_grid(phi, 2, L, N, ctx);
        worst = std::max(worst, state_distance(a.apply(G), b.apply(G)));
    }
    return worst;
}

}  // namespace

TEST_CASE("elementary transpositions are involutions") {
    const SpectralTuple t{1.0, 2.0, 3.0, 4.0};
    for (int k = 1; k <= 3; ++k) CHECK(s_action(k, s_action(k, t)) == t);
    CHECK(s_action(1, t) == SpectralTuple{2.0, 1.0, 3.0, 4.0});
    CHECK(s_action(3, t) == SpectralTuple{1.0, 2.0, 4.0, 3.0});
    CHECK_THROWS_AS((void)s_action(4, t), DomainError);
}

TEST_CASE("the S-word reproduces the product form of R") {
    const auto g = evaluator();
    const auto t = make_spectral_tuple(g->params(), 0.3, -0.2, 0.4, 0.7);
    const auto panel = test_panel(2);
    CHECK(operator_residual(build_R_word(g, t), build_R(g, t), {panel[0]}, kSpec, kH) < 1e-8);
    const auto swapped = make_spectral_tuple(g->params(), 0.3, -0.2, 0.7, 0.4);
    CHECK(operator_residual(build_R(g, swapped), build_R(g, t), {panel[0]}, kSpec, kH) > 1e-3);
}

TEST_CASE("R reduces to the identity at coinciding parameters") {
    const auto g = evaluator();
    const auto panel = test_panel(2);
    CHECK(operator_residual(build_R_spin(g, 0.0, 0.4, 0.4), FDOperator::identity(2), panel, kSpec, kH) < 1e-12);
    CHECK(operator_residual(build_R_spin(g, 0.2, 0.4, 0.4), FDOperator::identity(2), panel, kSpec, kH) > 1e-3);
}

TEST_CASE("RR is the permuted R-operator") {
    const auto g = evaluator();
    const auto RR = build_RR(g, 0.3, 0.4, 0.7);
    const auto PR = op_permute(2, 0, 1) * build_R_spin(g, 0.3, 0.4, 0.7);
    CHECK(grid_res(RR, PR, 4.0, 64) < 1e-12);
}

TEST_CASE("universal R: spectral form and translation invariance") {
    const auto g = evaluator();
    const auto R = build_universal_R(g, 0.2, 0.3);
    CHECK(grid_res(yangbaxterize(R, 0.0), R, 5.0, 128) < 1e-14);
    CHECK(grid_res(build_universal_R_u(g, 0.3, 0.2, 0.3), yangbaxterize(R, 0.3), 5.0, 128) < 1e-6);
    CHECK(grid_res(build_universal_R_u(g, 0.3, 0.2, 0.3), yangbaxterize(R, -0.3), 5.0, 128) > 1e-3);
    const auto T = op_shift(2, 0, 0.5) * op_shift(2, 1, 0.5);
    CHECK(grid_res(R * T, T * R, 6.0, 256) < 1e-8);
    // A shift of one coordinate alone is not a symmetry.
    const auto T0 = op_shift(2, 0, 0.5);
    CHECK(grid_res(R * T0, T0 * R, 6.0, 256) > 1e-3);
}

TEST_CASE("universal R is grid-only") {
    const auto g = evaluator();
    CHECK_THROWS((void)build_universal_R(g, 0.2, 0.3).apply(test_panel(2)[0]));
}
