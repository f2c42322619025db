#pragma once

#include <vector>

#include "modrop/params.hpp"

namespace modrop {

/// A value together with an estimate of its relative error.
struct Estimate {
    cplx value;
    double rel_error;
};

/// Evaluates the non-compact quantum dilogarithm
///
///   gamma(z) = exp( -1/4 * Int dt/t e^{itz} / (sin(omega t) sin(omega' t)) )
///
/// on the contour t = u + i*delta lifted above the pole at t = 0, together
/// with the Faddeev-Volkov function D_a(z) and the Fourier normalisation A(a).
///
/// The contour integral is summed with the trapezoidal rule, which converges
/// geometrically for this analytic integrand. Points with |Im z| above
/// 0.8 Im(omega'') are first brought back into the strip with the shift
/// equations; points with Re z < 0 go through the reflection formula.
///
/// Instances are immutable after construction and safe to share between
/// threads.
class GammaEvaluator {
public:
    explicit GammaEvaluator(const ModularParams& params, const NumericsConfig& numerics = {});

    [[nodiscard]] const ModularParams& params() const noexcept { return params_; }
    [[nodiscard]] const NumericsConfig& numerics() const noexcept { return numerics_; }

    [[nodiscard]] cplx gamma(cplx z) const { return gamma_estimate(z).value; }
    [[nodiscard]] Estimate gamma_estimate(cplx z) const;

    /// D_a(z) = e^{-2 pi i a z} gamma(z+a) / gamma(z-a).
    [[nodiscard]] cplx D(cplx a, cplx z) const;

    /// Normalisation of the Fourier transform of D_a:
    ///   A(a) * Int dt e^{2 pi i t z} D_a(t) = D_{-omega''-a}(z),
    ///   A(a) = gamma(-omega''-2a) exp(-(i pi/2)(2a+omega'')^2 - i beta/2).
    [[nodiscard]] cplx A(cplx a) const;

    /// Computes A(a) * Int_{-T}^{T} dt e^{2 pi i t z} D_a(t) by quadrature.
    /// Requires -Im(omega'') < Im(a) < 0. T <= 0 selects numerics().truncation.
    [[nodiscard]] cplx fourier_D(cplx a, cplx z, double T = 0.0) const;

    /// Residue of gamma at its pole -omega''.
    [[nodiscard]] cplx residue_at_pole() const noexcept { return residue_; }

    /// Relative accuracy floor calibrated on the self-test lattice.
    [[nodiscard]] double accuracy_floor() const noexcept { return floor_; }

    /// Throws SingularityError if z lies within 1e-6 of a pole or zero.
    void check_singular(cplx z) const;

private:
    Estimate direct(cplx z) const;
    Estimate reduced(cplx z, int depth) const;

    ModularParams params_;
    NumericsConfig numerics_;
    double step_ = 0.0;
    double decay_ = 0.0;  // Im omega + Im omega'
    std::vector<cplx> w_pos_;  // weights at u = +k h, k = 0..K
    std::vector<cplx> w_neg_;  // weights at u = -k h
    double disc_bound_ = 0.0;
    cplx residue_{};
    double floor_ = 0.0;
};

}  // namespace modrop
