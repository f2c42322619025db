#include "modrop/rop.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace modrop {

namespace {

std::vector<cplx> diff_form(const Sites& at) {
    std::vector<cplx> c(static_cast<std::size_t>(at.dims), 0.0);
    c.at(static_cast<std::size_t>(at.i)) = 1.0;
    c.at(static_cast<std::size_t>(at.j)) = -1.0;
    return c;
}

void check_sites(const Sites& at) {
    if (at.i == at.j || at.i < 0 || at.j < 0 || at.i >= at.dims || at.j >= at.dims) {
        throw ShapeError("two-site operator needs two distinct coordinates");
    }
}

// e^{c x_ij} / gamma(sigma x_ij + d)
FDOperator x_factor(std::shared_ptr<const GammaEvaluator> g, cplx c, double sigma, cplx d, const Sites& at) {
    const int i = at.i;
    const int j = at.j;
    struct Memo {
        std::mutex mu;
        std::map<std::pair<double, double>, cplx> values;
    };
    auto memo = std::make_shared<Memo>();
    return op_func_x(
        at.dims,
        [g, c, sigma, d, i, j, memo](std::span<const cplx> x) {
            const cplx z = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            const std::pair<double, double> key{z.real(), z.imag()};
            {
                std::lock_guard<std::mutex> lock(memo->mu);
                auto it = memo->values.find(key);
                if (it != memo->values.end()) return it->second;
            }
            const cplx v = std::exp(c * z) / g->gamma(sigma * z + d);
            std::lock_guard<std::mutex> lock(memo->mu);
            memo->values.emplace(key, v);
            return v;
        },
        "xfactor");
}

// e^{c p} / gamma(sigma p + d)
FDOperator p_factor(std::shared_ptr<const GammaEvaluator> g, int coord, cplx c, double sigma, cplx d, int dims) {
    return momentum_multiplier(
        dims, coord, [g, c, sigma, d](double k) { return std::exp(c * k) / g->gamma(sigma * k + d); }, "pfactor");
}

}  // namespace

SpectralTuple s_action(int k, const SpectralTuple& t) {
    switch (k) {
        case 1: return {t.u1, t.u2, t.v2, t.v1};
        case 2: return {t.u2, t.v2, t.u1, t.v1};
        case 3: return {t.u2, t.u1, t.v1, t.v2};
        default: throw DomainError("s_action: index must be 1, 2 or 3");
    }
}

FDOperator build_S(std::shared_ptr<const GammaEvaluator> g, int k, const SpectralTuple& t, Sites at) {
    check_sites(at);
    switch (k) {
        case 1: return d_of_p(std::move(g), at.dims, at.i, t.u2 - t.u1);
        case 2: return d_of_x(std::move(g), at.dims, t.u1 - t.v2, diff_form(at));
        case 3: return d_of_p(std::move(g), at.dims, at.j, t.v2 - t.v1);
        default: throw DomainError("build_S: index must be 1, 2 or 3");
    }
}

FDOperator build_R_word(std::shared_ptr<const GammaEvaluator> g, const SpectralTuple& t, Sites at) {
    const SpectralTuple t2 = s_action(2, t);
    const SpectralTuple t32 = s_action(3, t2);
    const SpectralTuple t132 = s_action(1, t32);
    return build_S(g, 2, t132, at) * build_S(g, 1, t32, at) * build_S(g, 3, t2, at) * build_S(g, 2, t, at);
}

FDOperator build_R(std::shared_ptr<const GammaEvaluator> g, const SpectralTuple& t, Sites at) {
    check_sites(at);
    const auto x = diff_form(at);
    return d_of_x(g, at.dims, t.u2 - t.v1, x) * d_of_p(g, at.dims, at.j, t.u1 - t.v1) *
           d_of_p(g, at.dims, at.i, t.u2 - t.v2) * d_of_x(g, at.dims, t.u1 - t.v2, x);
}

FDOperator build_R_spin(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, Sites at) {
    const auto& p = g->params();
    return build_R(g, make_spectral_tuple(p, u, 0.0, s1, s2), at);
}

State apply_R_integral(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, const State& phi,
                       Sites at) {
    check_sites(at);
    if (u.imag() != 0.0 || s1.imag() != 0.0 || s2.imag() != 0.0) {
        throw DomainError("apply_R_integral: kernels decay only for real u, s1, s2");
    }
    if (phi->dims() != at.dims) throw ShapeError("apply_R_integral: state dimension mismatch");
    const auto x = diff_form(at);
    const cplx sp = 0.5 * (s1 + s2);
    const cplx sm = 0.5 * (s1 - s2);
    const KernelOptions opts{0.6 * g->numerics().kernel_lift, true};
    State s = d_mul(g, u + sp, x, 0.0, phi);
    s = kernel_conv(g, at.i, u - sm, s, opts);
    s = kernel_conv(g, at.j, u + sm, s, opts);
    return d_mul(g, u - sp, x, 0.0, s);
}

FDOperator build_RR(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx si, cplx sj, Sites at) {
    return op_permute(at.dims, at.i, at.j) * build_R_spin(std::move(g), u, si, sj, at);
}

FDOperator build_universal_R(std::shared_ptr<const GammaEvaluator> g, cplx s1, cplx s2, Sites at) {
    check_sites(at);
    for (cplx s : {s1, s2}) {
        if (s.imag() != 0.0) throw DomainError("universal R: spins must be real (multiplier growth)");
    }
    const cplx sp = 0.5 * (s1 + s2);
    const cplx sm = 0.5 * (s1 - s2);
    const cplx ipi = kI * kPi;
    return op_permute(at.dims, at.i, at.j) * x_factor(g, -ipi * (s1 + s2), -1.0, sp, at) *
           p_factor(g, at.j, ipi * (s2 - s1), 1.0, -sm, at.dims) *
           p_factor(g, at.i, -ipi * (s1 - s2), -1.0, sm, at.dims) * x_factor(g, -ipi * (s1 + s2), 1.0, -sp, at);
}

FDOperator yangbaxterize(const FDOperator& R, cplx u, Sites at) {
    return op_shift(at.dims, at.i, -u) * R * op_shift(at.dims, at.i, u);
}

FDOperator build_universal_R_u(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, Sites at) {
    check_sites(at);
    const cplx sp = 0.5 * (s1 + s2);
    const cplx sm = 0.5 * (s1 - s2);
    const cplx tpi = 2.0 * kI * kPi;
    // The explicit factor form matches the similarity transform with the spectral parameter negated.
    u = -u;
    return std::exp(4.0 * kI * kPi * u * u) *
           (op_permute(at.dims, at.i, at.j) * x_factor(g, -tpi * (u + sp), -1.0, sp + u, at) *
            p_factor(g, at.j, tpi * (u - sm), 1.0, u - sm, at.dims) *
            p_factor(g, at.i, -tpi * (u + sm), -1.0, sm + u, at.dims) * x_factor(g, tpi * (u - sp), 1.0, u - sp, at));
}

FDOperator reduction_sequence(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx v, cplx s1, cplx s2,
                              Sites at) {
    const cplx w = u + v;
    return std::exp(4.0 * kI * kPi * w * w) *
           (op_shift(at.dims, at.i, v) * build_RR(std::move(g), w, s1, s2, at) * op_shift(at.dims, at.i, -v));
}

}  // namespace modrop
