#include "modrop/lax.hpp"

#include <cmath>

namespace modrop {

namespace {

std::vector<cplx> unit(int dims, int coord, cplx c) {
    std::vector<cplx> v(static_cast<std::size_t>(dims), 0.0);
    v.at(static_cast<std::size_t>(coord)) = c;
    return v;
}

// e^{c x_coord}
FDOperator expx(int dims, int coord, cplx c) { return op_exp_x(dims, 0.0, unit(dims, coord, c)); }

cplx big_u(const ModularParams& p, cplx u) { return std::exp(kI * kPi * u / (2.0 * p.omega)); }

// Diagonal entries of H(p): e^{-(i pi/2w)(p - w'')} and e^{(i pi/2w)(p - w'')}.
std::pair<FDOperator, FDOperator> h_entries(const ModularParams& p, int dims, int coord) {
    const cplx c = kI * kPi / (2.0 * p.omega);
    return {std::exp(c * p.omega_pp) * op_exp_p(dims, coord, -c),
            std::exp(-c * p.omega_pp) * op_exp_p(dims, coord, c)};
}

}  // namespace

std::pair<cplx, cplx> spin_to_u(const ModularParams& p, cplx u, cplx s) {
    const cplx shift = 0.5 * (p.omega - p.omega_p);
    return {u + 0.5 * s + shift, u - 0.5 * s + shift};
}

std::pair<cplx, cplx> u_to_spin(const ModularParams& p, cplx u1, cplx u2) {
    return {0.5 * (u1 + u2) - 0.5 * (p.omega - p.omega_p), u1 - u2};
}

SpectralTuple make_spectral_tuple(const ModularParams& p, cplx u, cplx v, cplx s1, cplx s2) {
    const auto [u1, u2] = spin_to_u(p, u, s1);
    const auto [v1, v2] = spin_to_u(p, v, s2);
    return SpectralTuple{u2, u1, v2, v1};
}

std::array<cplx, 4> tuple_to_spins(const ModularParams& p, const SpectralTuple& t) {
    const auto [u, s1] = u_to_spin(p, t.u1, t.u2);
    const auto [v, s2] = u_to_spin(p, t.v1, t.v2);
    return {u, v, s1, s2};
}

OperatorMatrix build_L(const ModularParams& p, cplx u, cplx s, int dims, int coord) {
    const auto g = generators(SpinParams{s, p}, dims, coord);
    const cplx z = std::exp(kI * kPi * u / p.omega);
    OperatorMatrix L;
    L.at(0, 0) = z * g.K - (1.0 / z) * g.Kinv;
    L.at(0, 1) = g.f;
    L.at(1, 0) = g.e;
    L.at(1, 1) = z * g.Kinv - (1.0 / z) * g.K;
    return L;
}

OperatorMatrix build_L12(const ModularParams& p, cplx u1, cplx u2, int dims, int coord) {
    const auto [u, s] = u_to_spin(p, u1, u2);
    return build_L(p, u, s, dims, coord);
}

OperatorMatrix build_M(const ModularParams& p, cplx u, int dims, int coord) {
    const cplx U = big_u(p, u);
    const FDOperator ex = expx(dims, coord, kI * kPi / p.omega);
    OperatorMatrix M;
    M.at(0, 0) = op_scalar(dims, U);
    M.at(0, 1) = op_scalar(dims, -1.0 / U);
    M.at(1, 0) = (-1.0 / U) * ex;
    M.at(1, 1) = U * ex;
    return M;
}

OperatorMatrix build_N(const ModularParams& p, cplx u, int dims, int coord) {
    const cplx U = big_u(p, u);
    const FDOperator ex = expx(dims, coord, -kI * kPi / p.omega);
    OperatorMatrix N;
    N.at(0, 0) = op_scalar(dims, -U);
    N.at(0, 1) = (1.0 / U) * ex;
    N.at(1, 0) = op_scalar(dims, -1.0 / U);
    N.at(1, 1) = U * ex;
    return N;
}

OperatorMatrix build_H(const ModularParams& p, int dims, int coord) {
    const auto [h1, h2] = h_entries(p, dims, coord);
    return OperatorMatrix::diag(h1, h2);
}

OperatorMatrix build_L_factorized(const ModularParams& p, cplx u1, cplx u2, int dims, int coord) {
    return build_M(p, u2, dims, coord) * build_H(p, dims, coord) * build_N(p, u1, dims, coord);
}

OperatorMatrix build_Lplus(const ModularParams& p, cplx u, int dims, int coord) {
    const auto [h1, h2] = h_entries(p, dims, coord);
    const FDOperator ex = expx(dims, coord, kI * kPi / p.omega);
    return OperatorMatrix::diag(h1, ex * h2) * build_N(p, u, dims, coord);
}

OperatorMatrix build_Lminus(const ModularParams& p, cplx u, int dims, int coord) {
    const auto [h1, h2] = h_entries(p, dims, coord);
    const FDOperator ex = expx(dims, coord, -kI * kPi / p.omega);
    return build_M(p, u, dims, coord) * OperatorMatrix::diag(cplx{-1.0, 0.0} * h1, h2 * ex);
}

OperatorMatrix build_ell(const ModularParams& p, cplx u, cplx s, int dims, int coord) {
    const auto g = generators(SpinParams{s, p}, dims, coord);
    const cplx z = std::exp(kI * kPi * u / p.omega);
    OperatorMatrix l;
    l.at(0, 0) = z * g.K;
    l.at(0, 1) = FDOperator::zero(dims);
    l.at(1, 0) = g.e;
    l.at(1, 1) = z * g.Kinv;
    return l;
}

OperatorMatrix build_ellbar(const ModularParams& p, cplx u, cplx s, int dims, int coord) {
    const auto g = generators(SpinParams{s, p}, dims, coord);
    const cplx z = std::exp(-kI * kPi * u / p.omega);
    OperatorMatrix l;
    l.at(0, 0) = z * g.Kinv;
    l.at(0, 1) = cplx{-1.0, 0.0} * g.f;
    l.at(1, 0) = FDOperator::zero(dims);
    l.at(1, 1) = z * g.K;
    return l;
}

}  // namespace modrop
