#include "doctest.h"
#include "modrop/measure.hpp"
#include "modrop/opalg.hpp"

#include <cmath>

using namespace modrop;

namespace {

constexpr double kH = 1.0 / 16.0;

cplx gauss(cplx al, cplx be, cplx x) { return std::exp(al * x * x + be * x); }

// Riemann sum of psi * phi over a grid.
cplx pair_grids(const GridData& a, const GridData& b) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.data[k] * b.data[k];
    return s * a.spacing();
}

}  // namespace

TEST_CASE("shifts and exponentials of momentum move the argument") {
    EvalContext ctx(kH);
    const cplx al{-1.2, 0.1};
    const cplx be{0.3, -0.2};
    const auto f = make_gaussian({al}, {be});
    const cplx a{0.4, 0.15};
    const cplx c{0.7, -1.3};
    const cplx x[] = {cplx{0.3, 0.0}};
    CHECK(std::abs(eval_state(op_shift(1, 0, a).apply(f), x, ctx) - gauss(al, be, x[0] + a)) < 1e-13);
    // e^{c p} with p = (1/2 pi i) d/dx is the shift by c / (2 pi i).
    CHECK(std::abs(eval_state(op_exp_p(1, 0, c).apply(f), x, ctx) - gauss(al, be, x[0] + c / (2.0 * kPi * kI))) <
          1e-13);
}

TEST_CASE("products apply right to left and sums distribute") {
    EvalContext ctx(kH);
    const auto f = make_gaussian({cplx{-1.0}}, {cplx{0.2}});
    const auto A = op_shift(1, 0, 0.25);
    const auto B = op_exp_x(1, 0.0, {cplx{0.0, 1.0}});
    const cplx x[] = {cplx{0.1}};
    const cplx xs[] = {cplx{0.35}};
    // (A B f)(x) = e^{i (x + 1/4)} f(x + 1/4), (B A f)(x) = e^{i x} f(x + 1/4).
    const cplx ab = eval_state((A * B).apply(f), x, ctx);
    const cplx ba = eval_state((B * A).apply(f), x, ctx);
    CHECK(std::abs(ab - std::exp(kI * 0.35) * eval_state(f, xs, ctx)) < 1e-14);
    CHECK(std::abs(ba - std::exp(kI * 0.1) * eval_state(f, xs, ctx)) < 1e-14);
    CHECK(std::abs(eval_state((A + B).apply(f), x, ctx) - eval_state(A.apply(f), x, ctx) -
                   eval_state(B.apply(f), x, ctx)) < 1e-14);
    CHECK(FDOperator::zero(1).is_zero());
    CHECK(FDOperator::identity(1).is_identity());
}

TEST_CASE("transpose moves an operator across the pairing") {
    EvalContext ctx(kH);
    const double L = 6.0;
    const int N = 256;
    const auto psi = make_gaussian({cplx{-1.5}}, {cplx{0.3, 0.2}});
    const auto phi = make_gaussian({cplx{-0.8}}, {cplx{-0.1}});
    const auto A = op_exp_x(1, 0.1, {cplx{0.0, 0.7}}) * op_shift(1, 0, 0.375);
    const GridData gpsi = to_grid(psi, 1, L, N, ctx);
    const GridData gphi = to_grid(phi, 1, L, N, ctx);
    const cplx lhs = pair_grids(gpsi, A.apply(gphi));
    const cplx rhs = pair_grids(A.transpose().apply(gpsi), gphi);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
}

TEST_CASE("Fresnel factor matches its spectral multiplier") {
    EvalContext ctx(kH);
    const double L = 8.0;
    const int N = 256;
    const auto f = make_gaussian({cplx{-2.0, 0.3}}, {cplx{0.2}});
    const auto F = fresnel(1, 0, 1);
    const GridData lazy = to_grid(F.apply(f), 1, L, N, ctx);
    GridData spectral = to_grid(f, 1, L, N, ctx);
    spectral_multiply(spectral, 0, [](double k) { return std::exp(-kI * kPi * k * k); });
    CHECK(state_distance(lazy, spectral) < 1e-10);
    CHECK(state_distance(lazy, F.apply(to_grid(f, 1, L, N, ctx))) < 1e-10);
}

TEST_CASE("momentum multipliers are grid-only") {
    const auto M = momentum_multiplier(1, 0, [](double k) { return cplx{std::cos(k)}; }, "cos p");
    CHECK_THROWS_AS((void)M.apply(make_gaussian({cplx{-1.0}}, {cplx{0.0}})), UnsupportedOperand);
}

TEST_CASE("operator matrices multiply like 2x2 matrices") {
    EvalContext ctx(kH);
    const auto f = make_gaussian({cplx{-1.0}}, {cplx{0.2}});
    const auto S = op_shift(1, 0, 0.5);
    const auto X = op_exp_x(1, 0.0, {cplx{0.3}});
    OperatorMatrix M;
    M.at(0, 0) = S;
    M.at(0, 1) = X;
    M.at(1, 0) = FDOperator::zero(1);
    M.at(1, 1) = FDOperator::identity(1);
    const auto panel = test_panel(1);
    const SamplingSpec spec{4.0, 64};
    CHECK(matrix_residual(OperatorMatrix::identity(1) * M, M, panel, spec, kH) < 1e-15);
    const auto M2 = M * M;
    CHECK(operator_residual(M2.at(0, 1), S * X + X, panel, spec, kH) < 1e-14);
    CHECK(M2.at(1, 0).is_zero());
    CHECK(matrix_residual(M2, M, panel, spec, kH) > 0.1);
}
