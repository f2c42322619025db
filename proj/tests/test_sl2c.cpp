#include "doctest.h"
#include "modrop/errors.hpp"
#include "modrop/sl2c.hpp"

using namespace modrop::sl2c;

namespace {

Exps e1(int var, int n) {
    Exps e{};
    e[static_cast<std::size_t>(var)] = n;
    return e;
}

}  // namespace

TEST_CASE("Gaussian rationals") {
    const GaussRational a{Rational(1, 2), Rational(-3, 4)};
    const GaussRational b{Rational(2), Rational(1, 3)};
    CHECK(a * b == GaussRational{Rational(1, 1) + Rational(1, 4), Rational(1, 6) - Rational(3, 2)});
    CHECK((a - a).is_zero());
    CHECK(a.str() == "1/2-3/4i");
}

TEST_CASE("Weyl algebra: canonical commutator and action") {
    const auto z = DiffOp::z(Z1);
    const auto d = DiffOp::d(Z1);
    CHECK(d * z - z * d == DiffOp::identity());
    CHECK(DiffOp::d(Z2) * z - z * DiffOp::d(Z2) == DiffOp::scalar(0));
    // d^2 z^3 = 6 z.
    CHECK(d.pow(2).apply(Poly::monomial(e1(Z1, 3))) == Poly::monomial(e1(Z1, 1), 6));
}

TEST_CASE("substitution operators translate a variable") {
    // e^{z1 d2} z2^2 = (z2 + z1)^2.
    const Op s = Substitution{Z1, Z2, 1};
    Poly expect = Poly::monomial(e1(Z2, 2));
    expect.add({1, 1, 0, 0}, 2);
    expect.add(e1(Z1, 2), 1);
    CHECK(s.apply(Poly::monomial(e1(Z2, 2))) == expect);
    const Op back = Substitution{Z1, Z2, -1};
    CHECK((back * s).apply(Poly::monomial(e1(Z2, 3))) == Poly::monomial(e1(Z2, 3)));
    CHECK_FALSE(s.is_pure());
}

TEST_CASE("holomorphic identities vanish exactly") {
    CHECK(check_f1(1, 4, 3).pass());
    CHECK(check_f2(1, 4, 3).pass());
    CHECK(check_intertwining(0, 2, Pairing::MinusPlus, 3).pass());
    CHECK(check_intertwining(1, 2, Pairing::PlusMinus, 3).pass());
    CHECK(check_canonical_pair(2, 3).pass());
    CHECK(check_RLL({2, 3, 1, 0}, 3).pass());
    CHECK(check_RLL_ab({2, 2, 0, 0}, 3).pass());
    CHECK(check_Rab_conjugation({2, 2, 0, 0}, 3).pass());
}

TEST_CASE("negative controls leave nonzero coefficients") {
    // R built for one tuple against L-operators of another.
    const std::array<long long, 4> t{3, 4, 1, 0};
    const auto R = build_R(t);
    const auto lhs = Op(R) * (build_L(3, 4, Z1) * build_L(0, 1, Z2));
    const auto rhs = (build_L(0, 1, Z1) * build_L(3, 4, Z2)) * Op(R);
    CHECK_FALSE(compare("RLL mismatched", lhs, rhs, {Z1, Z2}, 3).pass());
    CHECK_FALSE(compare("L+ u", build_Lplus(2, Z1), build_Lplus(3, Z1), {Z1}, 3).pass());
}

TEST_CASE("integrality preconditions") {
    CHECK_THROWS_AS((void)check_intertwining(3, 1, Pairing::MinusPlus, 3), modrop::DomainError);
    CHECK_THROWS_AS((void)check_RLL({0, 1, 3, 4}, 3), modrop::DomainError);
}
