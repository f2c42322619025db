#include "modrop/modouble.hpp"

#include <cmath>

namespace modrop {

Generators generators(const SpinParams& sp, int dims, int coord) {
    const auto& p = sp.params;
    const cplx qq = p.q - 1.0 / p.q;
    if (std::abs(qq) < 1e-12) throw DomainError("generators: q = +-1 is degenerate");
    const cplx c = kI * kPi / (2.0 * p.omega);
    std::vector<cplx> xc(static_cast<std::size_t>(dims), 0.0);
    xc[static_cast<std::size_t>(coord)] = kI * kPi / p.omega;
    std::vector<cplx> xm = xc;
    xm[static_cast<std::size_t>(coord)] = -xc[static_cast<std::size_t>(coord)];

    const FDOperator K = op_exp_p(dims, coord, -c);
    const FDOperator Kinv = op_exp_p(dims, coord, c);
    const cplx w = std::exp(c * (sp.s + p.omega_pp));
    // e^{-c(p - s - w'')} = e^{c(s + w'')} K, and so on.
    const FDOperator e = op_exp_x(dims, 0.0, xc) * (w * K - (1.0 / w) * Kinv);
    const FDOperator f = op_exp_x(dims, 0.0, xm) * (w * Kinv - (1.0 / w) * K);
    return Generators{K, Kinv, e, f, (1.0 / qq) * e, (1.0 / qq) * f};
}

Generators tilde_generators(const SpinParams& sp, int dims, int coord) {
    return generators(SpinParams{sp.s, swap_omegas(sp.params)}, dims, coord);
}

FDOperator casimir(const SpinParams& sp, int dims, int coord) {
    const auto g = generators(sp, dims, coord);
    const cplx q = sp.params.q;
    return cplx{-1.0, 0.0} * (g.f * g.e) - q * (g.K * g.K) - (1.0 / q) * (g.Kinv * g.Kinv) + op_scalar(dims, 2.0);
}

cplx casimir_eigenvalue(const SpinParams& sp) {
    const cplx c = std::cos(kPi * sp.s / (2.0 * sp.params.omega));
    return 4.0 * c * c;
}

FDOperator intertwiner_W(std::shared_ptr<const GammaEvaluator> g, cplx s, int dims, int coord) {
    return d_of_p(std::move(g), dims, coord, -s);
}

}  // namespace modrop
