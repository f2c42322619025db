#include "modrop/sl2c.hpp"

#include <sstream>

#include "modrop/errors.hpp"

namespace modrop::sl2c {

namespace {

// n!/(n-k)!
Rational falling(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    return r;
}

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

Poly apply_substitution(const Substitution& s, const Poly& p) {
    Poly out;
    for (const auto& [e, c] : p.terms()) {
        const int n = e[static_cast<std::size_t>(s.to)];
        for (int k = 0; k <= n; ++k) {
            Exps f = e;
            f[static_cast<std::size_t>(s.to)] = n - k;
            f[static_cast<std::size_t>(s.from)] += k;
            out.add(f, c * GaussRational(binom(n, k) * (k % 2 == 1 && s.sign < 0 ? -1 : 1)));
        }
    }
    return out;
}

void check_tuple(const std::array<long long, 4>& t) {
    const auto [u2, u1, v2, v1] = t;
    if (u2 - v1 < 0 || u2 - v2 < 0 || u1 - v1 < 0 || u1 - v2 < 0) {
        throw DomainError("sl2c: exponents u2-v1, u2-v2, u1-v1, u1-v2 must be nonnegative integers");
    }
}

DiffOp z12() { return DiffOp::z(Z1) - DiffOp::z(Z2); }

}  // namespace

std::string GaussRational::str() const {
    std::ostringstream os;
    os << re << (im < 0 ? "-" : "+") << (im < 0 ? Rational(-im) : im) << "i";
    return os.str();
}

Poly Poly::monomial(const Exps& e, GaussRational c) {
    Poly p;
    p.add(e, c);
    return p;
}

void Poly::add(const Exps& e, const GaussRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
}

void DiffOp::add(const Key& k, const GaussRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::scalar(GaussRational c) {
    DiffOp d;
    d.add({Exps{}, Exps{}}, c);
    return d;
}

DiffOp DiffOp::z(int var) {
    Exps e{};
    e[static_cast<std::size_t>(var)] = 1;
    DiffOp d;
    d.add({e, Exps{}}, 1);
    return d;
}

DiffOp DiffOp::d(int var) {
    Exps e{};
    e[static_cast<std::size_t>(var)] = 1;
    DiffOp d;
    d.add({Exps{}, e}, 1);
    return d;
}

DiffOp DiffOp::pow(int n) const {
    if (n < 0) throw DomainError("sl2c: negative power of a differential operator");
    DiffOp r = identity();
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Poly DiffOp::apply(const Poly& p) const {
    Poly out;
    for (const auto& [k, c] : terms_) {
        const auto& [alpha, beta] = k;
        for (const auto& [g, pc] : p.terms()) {
            Rational f = 1;
            Exps e{};
            bool dead = false;
            for (int i = 0; i < kVars && !dead; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                if (g[ii] < beta[ii]) {
                    dead = true;
                    break;
                }
                f *= falling(g[ii], beta[ii]);
                e[ii] = g[ii] - beta[ii] + alpha[ii];
            }
            if (!dead) out.add(e, c * pc * GaussRational(f));
        }
    }
    return out;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    for (const auto& [k, c] : b.terms_) r.add(k, c);
    return r;
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    for (const auto& [k, c] : b.terms_) r.add(k, -c);
    return r;
}

DiffOp operator*(const GaussRational& c, const DiffOp& a) {
    DiffOp r;
    for (const auto& [k, v] : a.terms_) r.add(k, c * v);
    return r;
}

// (z^a d^b)(z^g d^h): move each d_i^{b_i} through z_i^{g_i} with Leibniz.
DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp r;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const auto& [al, be] = ka;
            const auto& [ga, de] = kb;
            std::vector<std::pair<DiffOp::Key, Rational>> partial{{{al, de}, Rational(1)}};
            for (int i = 0; i < kVars; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                std::vector<std::pair<DiffOp::Key, Rational>> next;
                for (const auto& [key, f] : partial) {
                    for (int k = 0; k <= std::min(be[ii], ga[ii]); ++k) {
                        DiffOp::Key nk = key;
                        nk.first[ii] += ga[ii] - k;
                        nk.second[ii] += be[ii] - k;
                        next.emplace_back(nk, f * binom(be[ii], k) * falling(ga[ii], k));
                    }
                }
                partial = std::move(next);
            }
            for (const auto& [key, f] : partial) r.add(key, ca * cb * GaussRational(f));
        }
    }
    return r;
}

Op::Op(DiffOp d) {
    if (!d.is_zero()) terms_.push_back({Factor{std::move(d)}});
}

Op::Op(Substitution s) { terms_.push_back({Factor{s}}); }

bool Op::is_pure() const {
    for (const auto& t : terms_) {
        if (t.size() != 1 || !std::holds_alternative<DiffOp>(t.front())) return false;
    }
    return true;
}

DiffOp Op::normal_form() const {
    if (!is_pure()) throw UnsupportedOperand("sl2c: operator contains substitutions; no normal form");
    DiffOp r;
    for (const auto& t : terms_) r = r + std::get<DiffOp>(t.front());
    return r;
}

Poly Op::apply(const Poly& p) const {
    Poly out;
    for (const auto& t : terms_) {
        Poly cur = p;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            if (const auto* d = std::get_if<DiffOp>(&*it)) {
                cur = d->apply(cur);
            } else {
                cur = apply_substitution(std::get<Substitution>(*it), cur);
            }
        }
        out += cur;
    }
    return out;
}

void Op::simplify() {
    std::vector<std::vector<Factor>> merged;
    DiffOp pure;
    for (auto& t : terms_) {
        std::vector<Factor> m;
        for (auto& f : t) {
            if (!m.empty() && std::holds_alternative<DiffOp>(m.back()) && std::holds_alternative<DiffOp>(f)) {
                m.back() = std::get<DiffOp>(m.back()) * std::get<DiffOp>(f);
            } else {
                m.push_back(std::move(f));
            }
        }
        bool zero = false;
        for (const auto& f : m) {
            if (const auto* d = std::get_if<DiffOp>(&f); d && d->is_zero()) zero = true;
        }
        if (zero) continue;
        if (m.size() == 1 && std::holds_alternative<DiffOp>(m.front())) {
            pure = pure + std::get<DiffOp>(m.front());
        } else {
            merged.push_back(std::move(m));
        }
    }
    if (!pure.is_zero()) merged.insert(merged.begin(), std::vector<Factor>{Factor{std::move(pure)}});
    terms_ = std::move(merged);
}

Op operator+(const Op& a, const Op& b) {
    Op r = a;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.simplify();
    return r;
}

Op operator-(const Op& a, const Op& b) {
    Op r = a;
    for (auto t : b.terms_) {
        t.insert(t.begin(), Op::Factor{DiffOp::scalar(-1)});
        r.terms_.push_back(std::move(t));
    }
    r.simplify();
    return r;
}

Op operator*(const Op& a, const Op& b) {
    Op r;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            auto t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            r.terms_.push_back(std::move(t));
        }
    }
    r.simplify();
    return r;
}

Mat2 Mat2::identity() { return of(DiffOp::identity(), Op{}, Op{}, DiffOp::identity()); }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    }
    return r;
}

Mat2 operator*(const Op& op, const Mat2& a) {
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) r.e[k] = op * a.e[k];
    return r;
}

Mat2 operator*(const Mat2& a, const Op& op) {
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) r.e[k] = a.e[k] * op;
    return r;
}

Mat2 lower(const Op& c) { return Mat2::of(DiffOp::identity(), Op{}, c, DiffOp::identity()); }

Mat2 build_L(const GaussRational& u1, const GaussRational& u2, int var) {
    const DiffOp z = DiffOp::z(var);
    const Mat2 mid = Mat2::of(DiffOp::scalar(u1), GaussRational(-1) * DiffOp::d(var), Op{}, DiffOp::scalar(u2));
    return lower(z) * mid * lower(GaussRational(-1) * z);
}

Mat2 build_Lplus(const GaussRational& u1, int var) {
    const Mat2 top = Mat2::of(DiffOp::scalar(u1), GaussRational(-1) * DiffOp::d(var), Op{}, DiffOp::identity());
    return top * lower(GaussRational(-1) * DiffOp::z(var));
}

Mat2 build_Lminus(const GaussRational& u2, int var) {
    const Mat2 top = Mat2::of(DiffOp::identity(), GaussRational(-1) * DiffOp::d(var), Op{}, DiffOp::scalar(u2));
    return lower(DiffOp::z(var)) * top;
}

Mat2 swap_conjugate(const Mat2& m) { return Mat2::of(m.at(1, 1), m.at(1, 0), m.at(0, 1), m.at(0, 0)); }

Mat2 canonical_transform(const Mat2& m, int var, int a, int b) {
    const auto v = static_cast<std::size_t>(var);
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) {
        const DiffOp d = m.e[k].normal_form();
        DiffOp out;
        for (const auto& [key, c] : d.terms()) {
            DiffOp::Key rest = key;
            const int al = rest.first[v];
            const int be = rest.second[v];
            rest.first[v] = 0;
            rest.second[v] = 0;
            DiffOp base = DiffOp::scalar(c);
            for (int i = 0; i < kVars; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                base = base * DiffOp::z(i).pow(rest.first[ii]) * DiffOp::d(i).pow(rest.second[ii]);
            }
            const DiffOp mapped = (GaussRational(a) * DiffOp::d(var)).pow(al) * (GaussRational(b) * DiffOp::z(var)).pow(be);
            out = out + base * mapped;
        }
        r.e[k] = out;
    }
    return r;
}

DiffOp build_R(const std::array<long long, 4>& t) {
    check_tuple(t);
    const auto [u2, u1, v2, v1] = t;
    return z12().pow(static_cast<int>(u2 - v1)) * DiffOp::d(Z1).pow(static_cast<int>(u2 - v2)) *
           DiffOp::d(Z2).pow(static_cast<int>(u1 - v1)) * z12().pow(static_cast<int>(u1 - v2));
}

DiffOp build_Rab(const std::array<long long, 4>& t) {
    check_tuple(t);
    const auto [u2, u1, v2, v1] = t;
    return z12().pow(static_cast<int>(u2 - v1)) * (DiffOp::d(ZA) + DiffOp::d(Z1)).pow(static_cast<int>(u2 - v2)) *
           (DiffOp::d(Z2) + DiffOp::d(ZB)).pow(static_cast<int>(u1 - v1)) * z12().pow(static_cast<int>(u1 - v2));
}

std::vector<Exps> monomials(const std::vector<int>& vars, int degree) {
    std::vector<Exps> out{Exps{}};
    for (int v : vars) {
        std::vector<Exps> next;
        for (const auto& e : out) {
            int used = 0;
            for (int x : e) used += x;
            for (int k = 0; used + k <= degree; ++k) {
                Exps f = e;
                f[static_cast<std::size_t>(v)] = k;
                next.push_back(f);
            }
        }
        out = std::move(next);
    }
    return out;
}

ExactResult compare(const std::string& relation, const Mat2& lhs, const Mat2& rhs, const std::vector<int>& vars,
                    int degree) {
    ExactResult res;
    res.relation = relation;
    res.degree = degree;
    const auto monos = monomials(vars, degree);
    res.monomials = monos.size();
    for (std::size_t k = 0; k < 4; ++k) {
        const Op diff = lhs.e[k] - rhs.e[k];
        if (diff.is_pure()) res.nonzero += diff.normal_form().size();
        for (const auto& m : monos) res.nonzero += diff.apply(Poly::monomial(m)).size();
    }
    return res;
}

ExactResult check_f1(long long u, long long v, int degree) {
    const Mat2 lhs = build_Lminus(v, Z1) * build_Lplus(u, Z2);
    const Mat2 rhs = Op(Substitution{Z1, Z2, -1}) * build_L(u, v, Z1) * lower(GaussRational(-1) * DiffOp::z(Z2)) *
                     Op(Substitution{Z1, Z2, 1});
    return compare("f1", lhs, rhs, {Z1, Z2}, degree);
}

ExactResult check_f2(long long u, long long v, int degree) {
    const Mat2 lhs = build_Lminus(v, Z1) * build_Lplus(u, Z2);
    const Mat2 rhs = Op(Substitution{Z2, Z1, -1}) * lower(DiffOp::z(Z1)) * build_L(u, v, Z2) * Op(Substitution{Z2, Z1, 1});
    return compare("f2", lhs, rhs, {Z1, Z2}, degree);
}

ExactResult check_intertwining(long long u, long long v, Pairing which, int degree) {
    if (v - u < 0) throw DomainError("sl2c: intertwining needs v - u to be a nonnegative integer");
    const int n = static_cast<int>(v - u);
    if (which == Pairing::MinusPlus) {
        const Op w = (DiffOp::d(Z1) + DiffOp::d(Z2)).pow(n);
        return compare("L-L+", w * (build_Lminus(v, Z1) * build_Lplus(u, Z2)),
                       (build_Lminus(u, Z1) * build_Lplus(v, Z2)) * w, {Z1, Z2}, degree);
    }
    const Op w = z12().pow(n);
    return compare("L+L-", w * (build_Lplus(v, Z1) * build_Lminus(u, Z2)), (build_Lplus(u, Z1) * build_Lminus(v, Z2)) * w,
                   {Z1, Z2}, degree);
}

ExactResult check_canonical_pair(long long u, int degree) {
    auto a = compare("L+toL-", canonical_transform(swap_conjugate(build_Lminus(u, Z1)), Z1, -1, 1), build_Lplus(u, Z1),
                     {Z1}, degree);
    const auto b = compare("L+toL-", canonical_transform(swap_conjugate(build_Lplus(u, Z1)), Z1, 1, -1),
                           build_Lminus(u, Z1), {Z1}, degree);
    a.nonzero += b.nonzero;
    a.monomials += b.monomials;
    return a;
}

ExactResult check_RLL(const std::array<long long, 4>& t, int degree) {
    const Op R = build_R(t);
    const auto [u2, u1, v2, v1] = t;
    const Mat2 lhs = R * (build_L(u1, u2, Z1) * build_L(v1, v2, Z2));
    const Mat2 rhs = (build_L(v1, v2, Z1) * build_L(u1, u2, Z2)) * R;
    return compare("RLL-sl2c", lhs, rhs, {Z1, Z2}, degree);
}

ExactResult check_RLL_ab(const std::array<long long, 4>& t, int degree) {
    const Op R = build_Rab(t);
    const auto [u2, u1, v2, v1] = t;
    const Mat2 lhs = R * (build_Lminus(u2, ZA) * build_Lplus(u1, Z1) * build_Lminus(v2, Z2) * build_Lplus(v1, ZB));
    const Mat2 rhs = (build_Lminus(v2, ZA) * build_Lplus(v1, Z1) * build_Lminus(u2, Z2) * build_Lplus(u1, ZB)) * R;
    return compare("L-L+L-L+", lhs, rhs, {Z1, Z2, ZA, ZB}, degree);
}

ExactResult check_Rab_conjugation(const std::array<long long, 4>& t, int degree) {
    const Op conj = Op(Substitution{Z1, ZA, -1}) * Op(Substitution{Z2, ZB, -1}) * Op(build_R(t)) *
                    Op(Substitution{Z1, ZA, 1}) * Op(Substitution{Z2, ZB, 1});
    const Op rab = build_Rab(t);
    return compare("Rab", Mat2::of(conj, Op{}, Op{}, conj), Mat2::of(rab, Op{}, Op{}, rab), {Z1, Z2, ZA, ZB}, degree);
}

}  // namespace modrop::sl2c
