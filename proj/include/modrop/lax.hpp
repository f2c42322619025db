#pragma once

#include <utility>

#include "modrop/modouble.hpp"

namespace modrop {

/// The ordered parameter set (u2, u1, v2, v1).
struct SpectralTuple {
    cplx u2, u1, v2, v1;

    friend bool operator==(const SpectralTuple&, const SpectralTuple&) = default;
};

/// u1 = u + s/2 + omega/2 - omega'/2, u2 = u - s/2 + omega/2 - omega'/2.
std::pair<cplx, cplx> spin_to_u(const ModularParams& p, cplx u, cplx s);
/// Inverse of spin_to_u: returns (u, s).
std::pair<cplx, cplx> u_to_spin(const ModularParams& p, cplx u1, cplx u2);

SpectralTuple make_spectral_tuple(const ModularParams& p, cplx u, cplx v, cplx s1, cplx s2);
/// Returns (u, v, s1, s2).
std::array<cplx, 4> tuple_to_spins(const ModularParams& p, const SpectralTuple& t);

/// L(u) assembled from the generators of pi_s.
OperatorMatrix build_L(const ModularParams& p, cplx u, cplx s, int dims = 1, int coord = 0);
/// Same operator in the (u1, u2) parametrisation.
OperatorMatrix build_L12(const ModularParams& p, cplx u1, cplx u2, int dims = 1, int coord = 0);

OperatorMatrix build_M(const ModularParams& p, cplx u, int dims = 1, int coord = 0);
OperatorMatrix build_N(const ModularParams& p, cplx u, int dims = 1, int coord = 0);
OperatorMatrix build_H(const ModularParams& p, int dims = 1, int coord = 0);
/// M_{u2}(x) H(p) N_{u1}(x).
OperatorMatrix build_L_factorized(const ModularParams& p, cplx u1, cplx u2, int dims = 1, int coord = 0);

OperatorMatrix build_Lplus(const ModularParams& p, cplx u, int dims = 1, int coord = 0);
OperatorMatrix build_Lminus(const ModularParams& p, cplx u, int dims = 1, int coord = 0);

/// Lower-triangular reduction of L.
OperatorMatrix build_ell(const ModularParams& p, cplx u, cplx s, int dims = 1, int coord = 0);
/// Upper-triangular reduction of L.
OperatorMatrix build_ellbar(const ModularParams& p, cplx u, cplx s, int dims = 1, int coord = 0);

}  // namespace modrop
