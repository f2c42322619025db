#pragma once

#include "modrop/lax.hpp"

namespace modrop {

/// Placement of a two-site operator inside an n-coordinate space.
struct Sites {
    int dims = 2;
    int i = 0;
    int j = 1;
};

/// Elementary transposition s_k (k = 1, 2, 3) acting on (u2, u1, v2, v1).
SpectralTuple s_action(int k, const SpectralTuple& t);

/// S1 = D_{u2-u1}(p_i), S2 = D_{u1-v2}(x_i - x_j), S3 = D_{v2-v1}(p_j).
FDOperator build_S(std::shared_ptr<const GammaEvaluator> g, int k, const SpectralTuple& t, Sites at = {});

/// S2(s1 s3 s2 u) S1(s3 s2 u) S3(s2 u) S2(u).
FDOperator build_R_word(std::shared_ptr<const GammaEvaluator> g, const SpectralTuple& t, Sites at = {});

/// D_{u2-v1}(x_ij) D_{u1-v1}(p_j) D_{u2-v2}(p_i) D_{u1-v2}(x_ij).
FDOperator build_R(std::shared_ptr<const GammaEvaluator> g, const SpectralTuple& t, Sites at = {});

/// R_{12}(u) for spins (s1, s2); depends on the spectral parameters only
/// through their difference u.
FDOperator build_R_spin(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, Sites at = {});

/// Double-kernel form of R: multiply, two independent one-coordinate kernel
/// integrals on a separately placed contour, multiply.
State apply_R_integral(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, const State& phi,
                       Sites at = {});

/// P_ij R_ij(u) with spins (s_i, s_j) attached to the sites.
FDOperator build_RR(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx si, cplx sj, Sites at = {});

/// The spectral-parameter-free universal R-matrix; grids only.
FDOperator build_universal_R(std::shared_ptr<const GammaEvaluator> g, cplx s1, cplx s2, Sites at = {});

/// e^{-2 pi i u p_i} R e^{2 pi i u p_i}.
FDOperator yangbaxterize(const FDOperator& R, cplx u, Sites at = {});

/// Explicit factor form of R(u); equals yangbaxterize(R, u).
FDOperator build_universal_R_u(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx s1, cplx s2, Sites at = {});

/// e^{4 pi i (u+v)^2} e^{2 pi i v p_i} P R(u + v) e^{-2 pi i v p_i}.
FDOperator reduction_sequence(std::shared_ptr<const GammaEvaluator> g, cplx u, cplx v, cplx s1, cplx s2,
                              Sites at = {});

}  // namespace modrop
