#include "modrop/params.hpp"

#include <algorithm>
#include <cmath>

namespace modrop {

namespace {

ModularParams from_omegas(cplx omega, cplx omega_p) {
    ModularParams p{};
    p.omega = omega;
    p.omega_p = omega_p;
    p.omega_pp = omega + omega_p;
    p.beta = kPi / 12.0 * (omega / omega_p + omega_p / omega);
    p.q = std::exp(kI * kPi * omega_p / omega);
    p.q_tilde = std::exp(kI * kPi * omega / omega_p);
    p.tau = omega_p / omega;
    return p;
}

}  // namespace

ModularParams make_params(double b) {
    if (!std::isfinite(b) || b <= 0.0) {
        throw DomainError("make_params: b must be positive and finite, got " + std::to_string(b));
    }
    return from_omegas(cplx{0.0, b / 2.0}, cplx{0.0, 1.0 / (2.0 * b)});
}

ModularParams swap_omegas(const ModularParams& p) { return from_omegas(p.omega_p, p.omega); }

std::vector<std::string> params_warnings(const ModularParams& p) {
    std::vector<std::string> out;
    if (std::abs(p.im_omega() - p.im_omega_p()) < 1e-9) {
        out.emplace_back("b = 1: pole rows of the dilogarithm integrand coincide; quadrature is less well conditioned");
    }
    return out;
}

std::string to_string(ToleranceClass c) {
    switch (c) {
        case ToleranceClass::Scalar: return "scalar";
        case ToleranceClass::OneCoord: return "one-coord";
        case ToleranceClass::TwoCoord: return "two-coord";
        case ToleranceClass::Composite: return "composite";
        case ToleranceClass::YangBaxterCoarse: return "yb-coarse";
        case ToleranceClass::YangBaxterFine: return "yb-fine";
    }
    return "unknown";
}

std::map<ToleranceClass, double> NumericsConfig::default_tolerances() {
    return {{ToleranceClass::Scalar, 1e-8},           {ToleranceClass::OneCoord, 1e-6},
            {ToleranceClass::TwoCoord, 1e-5},         {ToleranceClass::Composite, 1e-4},
            {ToleranceClass::YangBaxterCoarse, 1e-2}, {ToleranceClass::YangBaxterFine, 1e-3}};
}

double NumericsConfig::tol(ToleranceClass c) const {
    auto it = relation_tols.find(c);
    return it != relation_tols.end() ? it->second : default_tolerances().at(c);
}

void NumericsConfig::validate(const ModularParams& p) const {
    const double pole_row = 2.0 * kPi * std::min(p.b(), 1.0 / p.b());
    if (!(contour_lift > 0.0 && contour_lift < pole_row)) {
        throw DomainError("contour_lift must lie in (0, 2*pi*min(b,1/b))");
    }
    if (grid_points <= 0 || (grid_points & (grid_points - 1)) != 0) {
        throw DomainError("grid_points must be a power of two");
    }
    if (!(grid_halfwidth > 0.0) || !(truncation > 0.0) || !(kernel_halfwidth > 0.0)) {
        throw DomainError("grid_halfwidth, truncation and kernel_halfwidth must be positive");
    }
    if (!(kernel_step > 0.0)) throw DomainError("kernel_step must be positive");
    const double lower_row = 2.0 * std::min(p.im_omega(), p.im_omega_p());
    if (!(kernel_lift > 0.0 && kernel_lift < lower_row)) {
        throw DomainError("kernel_lift must lie in (0, 2*min(Im omega, Im omega'))");
    }
    if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
}

}  // namespace modrop
