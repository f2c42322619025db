#pragma once

#include <map>
#include <string>
#include <vector>

#include "modrop/errors.hpp"

namespace modrop {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Half-periods of the modular double in the positive regime (b > 0):
/// omega = i b/2, omega' = i/(2b), so omega * omega' = -1/4.
struct ModularParams {
    cplx omega;
    cplx omega_p;
    cplx omega_pp;  // omega + omega'
    cplx beta;      // (pi/12)(omega/omega' + omega'/omega)
    cplx q;         // exp(i pi omega'/omega)
    cplx q_tilde;   // exp(i pi omega/omega')
    cplx tau;       // omega'/omega

    [[nodiscard]] double b() const noexcept { return 2.0 * omega.imag(); }
    /// Positive-imaginary half-periods as real numbers.
    [[nodiscard]] double im_omega() const noexcept { return omega.imag(); }
    [[nodiscard]] double im_omega_p() const noexcept { return omega_p.imag(); }
    [[nodiscard]] double im_omega_pp() const noexcept { return omega_pp.imag(); }

    friend bool operator==(const ModularParams&, const ModularParams&) = default;
};

/// Builds the parameter set for scale b. Throws DomainError for b <= 0 or
/// non-finite b. b == 1 is accepted; see params_warnings().
ModularParams make_params(double b);

/// Exchanges omega and omega' (equivalently b -> 1/b, q <-> q~).
ModularParams swap_omegas(const ModularParams& p);

/// Human-readable warnings for parameter choices that are valid but
/// numerically unfavourable.
std::vector<std::string> params_warnings(const ModularParams& p);

/// Tolerance classes used by the relation checks.
enum class ToleranceClass { Scalar, OneCoord, TwoCoord, Composite, YangBaxterCoarse, YangBaxterFine };

std::string to_string(ToleranceClass c);

struct NumericsConfig {
    double quad_tol = 1e-12;
    /// Lift delta of the dilogarithm contour t = u + i delta.
    double contour_lift = 2.5;
    /// Half-width T of Fourier-type t-integrations.
    double truncation = 40.0;
    double grid_halfwidth = 4.0;
    int grid_points = 256;
    /// Step of the lattice used by kernel convolutions (and by sampling).
    double kernel_step = 1.0 / 16.0;
    /// Depth below the real axis of the kernel contour.
    double kernel_lift = 0.4;
    /// Half-width of kernel convolutions beyond |a|.
    double kernel_halfwidth = 6.0;
    std::map<ToleranceClass, double> relation_tols = default_tolerances();

    static std::map<ToleranceClass, double> default_tolerances();
    [[nodiscard]] double tol(ToleranceClass c) const;

    /// Throws DomainError if the configuration is inconsistent with p.
    void validate(const ModularParams& p) const;
};

}  // namespace modrop
