#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "modrop/state.hpp"

namespace modrop {

/// Elementary factor of a finite-difference operator acting on n coordinates.
struct Primitive {
    enum class Kind { Shift, ExpMul, DMulX, DKernelP, MomentumMul, FuncMulX, Fresnel, Permute };

    Kind kind = Kind::Shift;
    int coord = 0;
    int coord2 = 0;
    cplx a{};                     // shift amount or D index
    cplx c0{};                    // constant of ExpMul, offset of DMulX
    std::vector<cplx> coeffs;     // linear form for ExpMul / DMulX
    int sign = 1;                 // Fresnel: e^{-sign i pi p^2}
    KernelOptions kernel{};
    std::shared_ptr<const GammaEvaluator> gamma;
    std::function<cplx(double)> pfun;  // MomentumMul
    PointFunction xfun;                // FuncMulX
    std::string name;

    [[nodiscard]] std::string describe() const;
};

class OpNode;

/// A finite-difference operator: a lazily composed expression over
/// primitives. Products keep their structure, so (A B)(phi) = A(B(phi)) is
/// applied factor by factor rather than multiplied out.
class FDOperator {
public:
    FDOperator() = default;
    explicit FDOperator(int dims);  // the zero operator

    static FDOperator identity(int dims);
    static FDOperator zero(int dims) { return FDOperator(dims); }
    static FDOperator primitive(int dims, Primitive p);

    [[nodiscard]] int dims() const noexcept { return dims_; }
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_identity() const noexcept;
    /// Number of primitive leaves, counting shared subexpressions each time.
    [[nodiscard]] std::size_t size() const;

    /// Lazy application: wraps the state in expression-tree nodes.
    [[nodiscard]] State apply(const State& s) const;
    /// Eager application on a uniform grid; functions of momentum become
    /// spectral multipliers.
    [[nodiscard]] GridData apply(const GridData& g) const;
    /// Transpose with respect to the bilinear pairing Int psi(x) phi(x) dx.
    [[nodiscard]] FDOperator transpose() const;

    FDOperator& operator+=(const FDOperator& o);
    friend FDOperator operator+(FDOperator a, const FDOperator& b) { return a += b; }
    friend FDOperator operator-(FDOperator a, const FDOperator& b) { return a += cplx{-1.0, 0.0} * b; }
    friend FDOperator operator*(const FDOperator& a, const FDOperator& b);
    friend FDOperator operator*(cplx c, const FDOperator& a);

private:
    FDOperator(int dims, std::shared_ptr<const OpNode> node) : dims_(dims), node_(std::move(node)) {}

    int dims_ = 1;
    std::shared_ptr<const OpNode> node_;  // null means zero
};

FDOperator compose(const std::vector<FDOperator>& ops);

// ---- primitive constructors --------------------------------------------------

/// e^{2 pi i a p_coord}: x_coord -> x_coord + a.
FDOperator op_shift(int dims, int coord, cplx a);
/// e^{c p_coord} with p = (1/2 pi i) d/dx.
FDOperator op_exp_p(int dims, int coord, cplx c);
/// Multiplication by e^{c0 + sum_i c_i x_i}.
FDOperator op_exp_x(int dims, cplx c0, std::vector<cplx> coeffs);
FDOperator op_scalar(int dims, cplx c);
FDOperator op_permute(int dims, int i, int j);
/// Multiplication by D_a(sum_i c_i x_i + d).
FDOperator d_of_x(std::shared_ptr<const GammaEvaluator> g, int dims, cplx a, std::vector<cplx> coeffs, cplx d = 0.0);
/// D_a(p_coord), realized by its integral kernel on states and as a spectral
/// multiplier on grids.
FDOperator d_of_p(std::shared_ptr<const GammaEvaluator> g, int dims, int coord, cplx a, KernelOptions opts = {});
/// Arbitrary function of p_coord; grids only.
FDOperator momentum_multiplier(int dims, int coord, std::function<cplx(double)> f, std::string name);
FDOperator op_func_x(int dims, PointFunction f, std::string name);
/// e^{-sign i pi p_coord^2}; exact on Gaussian states.
FDOperator fresnel(int dims, int coord, int sign);

/// e^{t d^2/dx^2} on one coordinate of a Gaussian term (t complex).
GaussTerm heat_flow(const GaussTerm& term, int coord, cplx t);

// ---- 2x2 operator matrices -----------------------------------------------------

struct OperatorMatrix {
    std::array<FDOperator, 4> e;  // row-major

    [[nodiscard]] const FDOperator& at(int i, int j) const { return e[2 * i + j]; }
    FDOperator& at(int i, int j) { return e[2 * i + j]; }
    [[nodiscard]] int dims() const { return e[0].dims(); }

    static OperatorMatrix identity(int dims);
    static OperatorMatrix diag(const FDOperator& a, const FDOperator& d);
};

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cplx c, const OperatorMatrix& a);
OperatorMatrix operator*(const FDOperator& op, const OperatorMatrix& a);
OperatorMatrix operator*(const OperatorMatrix& a, const FDOperator& op);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);

// ---- spectral helpers ------------------------------------------------------------

/// Multiplies by f(k) along one axis in discrete Fourier space, with
/// k_m = m / (2L), m in [-N/2, N/2).
void spectral_multiply(GridData& g, int coord, const std::function<cplx(double)>& f);

}  // namespace modrop
