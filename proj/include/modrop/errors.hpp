#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace modrop {

using cplx = std::complex<double>;

/// Argument outside the domain where an operation is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument too close to a pole or zero of the quantum dilogarithm.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, cplx lattice_point)
        : std::runtime_error(what), point_(lattice_point) {}
    [[nodiscard]] cplx lattice_point() const noexcept { return point_; }

private:
    cplx point_;
};

/// An integral whose integrand does not decay, or a quadrature that failed.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand kind not supported by an operator (e.g. Fresnel on a non-Gaussian).
class UnsupportedOperand : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinate indices or grid shapes that do not fit together.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace modrop
