#pragma once

#include "modrop/opalg.hpp"

namespace modrop {

struct SpinParams {
    cplx s{0.0, 0.0};
    ModularParams params;
};

/// Generators of the representation pi_s acting on one coordinate of an
/// n-coordinate space. e = (q - 1/q) E and f = (q - 1/q) F.
struct Generators {
    FDOperator K;
    FDOperator Kinv;
    FDOperator e;
    FDOperator f;
    FDOperator E;
    FDOperator F;
};

Generators generators(const SpinParams& sp, int dims = 1, int coord = 0);
/// Same construction with omega and omega' exchanged.
Generators tilde_generators(const SpinParams& sp, int dims = 1, int coord = 0);

/// -(q - 1/q)^2 F E - q K^2 - K^{-2}/q + 2. With the generators above this
/// is the sign of the F E term that makes the operator central.
FDOperator casimir(const SpinParams& sp, int dims = 1, int coord = 0);
/// 4 cos^2(pi s / 2 omega).
cplx casimir_eigenvalue(const SpinParams& sp);

/// The intertwiner pi_s -> pi_{-s}: W = D_{-s}(p).
FDOperator intertwiner_W(std::shared_ptr<const GammaEvaluator> g, cplx s, int dims = 1, int coord = 0);

}  // namespace modrop
