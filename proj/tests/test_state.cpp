#include "doctest.h"
#include "modrop/state.hpp"

#include <cmath>
#include <cstdio>

using namespace modrop;

namespace {

// D_a(p) f(x) = Int dk D_a(k) fhat(k) e^{2 pi i k x} for f = exp(al x^2 + be x).
cplx fourier_multiplier_reference(const GammaEvaluator& g, cplx a, cplx al, cplx be, cplx x) {
    const double h = 0.002;
    cplx sum{0.0, 0.0};
    for (double k = -12.0; k <= 12.0; k += h) {
        const cplx s = be - 2.0 * kPi * kI * k;
        const cplx fhat = std::sqrt(kPi / -al) * std::exp(-s * s / (4.0 * al));
        sum += g.D(a, k) * fhat * std::exp(2.0 * kPi * kI * k * x);
    }
    return h * sum;
}

std::shared_ptr<const GammaEvaluator> evaluator() {
    static auto g = std::make_shared<const GammaEvaluator>(make_params(0.8));
    return g;
}

}  // namespace

TEST_CASE("gaussian leaf and structural nodes") {
    EvalContext ctx(1.0 / 16.0);
    const auto f = make_gaussian({cplx{-1.0, 0.2}, cplx{-0.5, 0.0}}, {cplx{0.3, 0.0}, cplx{0.0, -0.4}}, 2.0);
    const cplx x[] = {cplx{0.25, 0.1}, cplx{-0.5, 0.0}};
    const cplx expect = 2.0 * std::exp(cplx{-1.0, 0.2} * x[0] * x[0] + 0.3 * x[0] - 0.5 * x[1] * x[1] -
                                       cplx{0.0, 0.4} * x[1]);
    CHECK(std::abs(eval_state(f, x, ctx) - expect) < 1e-14);

    const auto tree = sum_states({scale_state(cplx{0.0, 1.0}, shift_state(0, cplx{0.3, -0.2}, f)),
                                  permute_state(0, 1, exp_linear_mul(0.1, {cplx{0.0, 0.5}, 1.0}, f))});
    const auto terms = gaussian_terms(tree);
    REQUIRE(terms.has_value());
    REQUIRE(terms->size() == 2);
    cplx via_terms{0.0, 0.0};
    for (const auto& t : *terms) via_terms += eval_state(make_gaussian(t), x, ctx);
    CHECK(std::abs(eval_state(tree, x, ctx) - via_terms) < 1e-13);

    const cplx y[] = {x[1], x[0]};
    const cplx direct = kI * eval_state(f, std::array<cplx, 2>{x[0] + cplx{0.3, -0.2}, x[1]}, ctx) +
                        std::exp(0.1 + cplx{0.0, 0.5} * y[0] + y[1]) * eval_state(f, y, ctx);
    CHECK(std::abs(eval_state(tree, x, ctx) - direct) < 1e-13);
}

TEST_CASE("lattice offsets and real offsets name the same point") {
    const double h = 1.0 / 16.0;
    EvalContext ctx(h);
    const auto f = make_gaussian({cplx{-1.0, 0.0}}, {cplx{0.0, 0.0}});
    const auto s = shift_state(0, 3.0 * h, f);
    const cplx x[] = {cplx{5.0 * h, 0.0}};
    CHECK(std::abs(eval_state(s, x, ctx) - std::exp(-std::pow(8.0 * h, 2))) < 1e-15);
}

TEST_CASE("kernel convolution agrees with the Fourier multiplier") {
    const auto g = evaluator();
    const cplx al{-1.2, 0.3};
    const cplx be{0.4, -0.2};
    const auto f = make_gaussian({al}, {be});
    for (cplx a : {cplx{0.35, 0.0}, cplx{-0.6, 0.0}, cplx{0.2, -0.1}, cplx{1.1, 0.05}}) {
        EvalContext ctx(g->numerics().kernel_step);
        const auto s = kernel_conv(g, 0, a, f);
        for (cplx x : {cplx{0.3125, 0.0}, cplx{-0.5, 0.0}, cplx{0.1, 0.15}}) {
            const cplx got = eval_state(s, std::span<const cplx>(&x, 1), ctx);
            const cplx ref = fourier_multiplier_reference(*g, a, al, be, x);
            CHECK(std::abs(got - ref) < 1e-9);
        }
    }
}

TEST_CASE("kernel convolution composes as D_a D_b = D_b D_a") {
    const auto g = evaluator();
    const auto f = make_gaussian({cplx{-0.9, 0.0}}, {cplx{0.1, 0.0}});
    EvalContext ctx(g->numerics().kernel_step);
    const auto ab = kernel_conv(g, 0, 0.3, kernel_conv(g, 0, -0.45, f));
    const auto ba = kernel_conv(g, 0, -0.45, kernel_conv(g, 0, 0.3, f));
    const cplx x{0.25, 0.0};
    const cplx v1 = eval_state(ab, std::span<const cplx>(&x, 1), ctx);
    const cplx v2 = eval_state(ba, std::span<const cplx>(&x, 1), ctx);
    CHECK(std::abs(v1 - v2) < 1e-10);
    CHECK(std::abs(v1) > 1e-3);
}

TEST_CASE("nesting guard and shape errors") {
    const auto g = evaluator();
    const auto f = make_gaussian({cplx{-1.0, 0.0}}, {cplx{0.0, 0.0}});
    State s = f;
    for (int i = 0; i < kMaxConvDepth + 1; ++i) s = kernel_conv(g, 0, 0.1 * (i + 1), s);
    EvalContext ctx(1.0 / 16.0);
    const cplx x{0.0, 0.0};
    CHECK_THROWS_AS(eval_state(s, std::span<const cplx>(&x, 1), ctx), DomainError);
    CHECK_THROWS_AS(shift_state(2, 0.1, f), ShapeError);
    CHECK_THROWS_AS(kernel_conv(g, 0, cplx{0.1, 0.3}, f), DomainError);
    CHECK_THROWS_AS(make_gaussian({cplx{1.0, 0.0}}, {cplx{0.0, 0.0}}), DomainError);
    const auto k = kernel_conv(g, 0, 0.2, f);
    EvalContext wrong(1.0 / 8.0);
    CHECK_THROWS_AS(eval_state(k, std::span<const cplx>(&x, 1), wrong), ShapeError);
}

TEST_CASE("grid sampling, distance and file round trips") {
    EvalContext ctx(1.0 / 16.0);
    const auto f = make_gaussian({cplx{-1.0, 0.0}, cplx{-2.0, 0.0}}, {cplx{0.0, 0.3}, cplx{0.0, 0.0}});
    const auto grid = to_grid(f, 2, 4.0, 16, ctx);
    CHECK(grid.size() == 256);
    CHECK(std::abs(grid.data[0] - std::exp(cplx{-16.0, -1.2} - 32.0)) < 1e-20);
    CHECK(state_distance(grid, grid) == 0.0);

    const std::string bin = "grid_roundtrip_test.bin";
    write_grid_binary(grid, bin);
    const auto back = read_grid_binary(bin);
    CHECK(back.compatible(grid));
    CHECK(back.data == grid.data);
    std::remove(bin.c_str());

    const std::string csv = "grid_roundtrip_test.csv";
    write_grid_csv(grid, csv);
    std::FILE* fp = std::fopen(csv.c_str(), "r");
    REQUIRE(fp != nullptr);
    int lines = 0;
    for (int c = std::fgetc(fp); c != EOF; c = std::fgetc(fp)) lines += (c == '\n');
    std::fclose(fp);
    CHECK(lines == 257);
    std::remove(csv.c_str());

    CHECK_THROWS_AS(make_grid(1, 4.0, 99), DomainError);
}
