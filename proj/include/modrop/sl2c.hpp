#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace modrop::sl2c {

using Rational = boost::multiprecision::cpp_rational;

struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(long long r) : re(r) {}  // NOLINT
    GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRational operator-() const { return {-re, -im}; }
    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
    std::string str() const;
};

// Variables z1, z2 (quantum spaces) and za, zb (auxiliary spaces of the R^{ab} form).
inline constexpr int kVars = 4;
enum Var : int { Z1 = 0, Z2 = 1, ZA = 2, ZB = 3 };
using Exps = std::array<int, kVars>;

class Poly {
public:
    static Poly monomial(const Exps& e, GaussRational c = 1);
    void add(const Exps& e, const GaussRational& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Exps, GaussRational>& terms() const { return terms_; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    std::map<Exps, GaussRational> terms_;
};

/// Normal-ordered element of the Weyl algebra: sum of c * z^alpha d^beta.
class DiffOp {
public:
    using Key = std::pair<Exps, Exps>;

    static DiffOp scalar(GaussRational c);
    static DiffOp identity() { return scalar(1); }
    static DiffOp z(int var);
    static DiffOp d(int var);

    DiffOp pow(int n) const;
    Poly apply(const Poly& p) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, GaussRational>& terms() const { return terms_; }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
    friend DiffOp operator*(const GaussRational& c, const DiffOp& a);
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

private:
    void add(const Key& k, const GaussRational& c);
    std::map<Key, GaussRational> terms_;
};

/// exp(sign * z_from * d_to): the substitution z_to -> z_to + sign * z_from.
struct Substitution {
    int from;
    int to;
    int sign;
};

/// Sum of products of Weyl-algebra elements and substitutions. Factors act
/// right to left.
class Op {
public:
    using Factor = std::variant<DiffOp, Substitution>;

    Op() = default;
    Op(DiffOp d);  // NOLINT
    Op(Substitution s);  // NOLINT

    Poly apply(const Poly& p) const;
    /// True when every term is a single Weyl-algebra factor.
    bool is_pure() const;
    /// The normal form; throws when the operator contains substitutions.
    DiffOp normal_form() const;

    friend Op operator+(const Op& a, const Op& b);
    friend Op operator-(const Op& a, const Op& b);
    friend Op operator*(const Op& a, const Op& b);

private:
    void simplify();
    std::vector<std::vector<Factor>> terms_;
};

struct Mat2 {
    std::array<Op, 4> e;
    Op& at(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const Op& at(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
    static Mat2 of(Op a, Op b, Op c, Op d) { return Mat2{{std::move(a), std::move(b), std::move(c), std::move(d)}}; }
    static Mat2 identity();
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(const Op& op, const Mat2& a);
Mat2 operator*(const Mat2& a, const Op& op);

/// [[1,0],[c,1]].
Mat2 lower(const Op& c);
/// L(u1,u2) = [[1,0],[z,1]] [[u1,-d],[0,u2]] [[1,0],[-z,1]] in variable var.
Mat2 build_L(const GaussRational& u1, const GaussRational& u2, int var);
Mat2 build_Lplus(const GaussRational& u1, int var);
Mat2 build_Lminus(const GaussRational& u2, int var);
/// The Fourier-type substitution z -> a*d, d -> b*z in one variable, applied entrywise.
Mat2 canonical_transform(const Mat2& m, int var, int a, int b);
Mat2 swap_conjugate(const Mat2& m);

/// z12^{u2-v1} d1^{u2-v2} d2^{u1-v1} z12^{u1-v2}.
DiffOp build_R(const std::array<long long, 4>& tuple);
/// z12^{u2-v1} (da+d1)^{u2-v2} (d2+db)^{u1-v1} z12^{u1-v2}.
DiffOp build_Rab(const std::array<long long, 4>& tuple);

struct ExactResult {
    std::string relation;
    int degree = 0;
    std::size_t monomials = 0;
    /// Nonzero coefficients left in LHS - RHS, over entries and monomials
    /// (and in the operator normal form when both sides are pure).
    std::size_t nonzero = 0;
    bool pass() const { return nonzero == 0; }
};

/// All monomials in the given variables with total degree <= degree.
std::vector<Exps> monomials(const std::vector<int>& vars, int degree);

ExactResult compare(const std::string& relation, const Mat2& lhs, const Mat2& rhs, const std::vector<int>& vars,
                    int degree);

ExactResult check_f1(long long u, long long v, int degree);
ExactResult check_f2(long long u, long long v, int degree);
enum class Pairing { MinusPlus, PlusMinus };
/// Requires v - u a nonnegative integer.
ExactResult check_intertwining(long long u, long long v, Pairing which, int degree);
/// Both canonical maps between L+ and L-.
ExactResult check_canonical_pair(long long u, int degree);
/// tuple = (u2, u1, v2, v1); requires min(u1,u2) >= max(v1,v2).
ExactResult check_RLL(const std::array<long long, 4>& tuple, int degree);
/// The auxiliary-space form with four L-factors.
ExactResult check_RLL_ab(const std::array<long long, 4>& tuple, int degree);
/// R^{ab} against the conjugation of R by the auxiliary substitutions.
ExactResult check_Rab_conjugation(const std::array<long long, 4>& tuple, int degree);

}  // namespace modrop::sl2c
