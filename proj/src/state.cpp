#include "modrop/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace modrop {

namespace {

void hash_mix(std::size_t& seed, std::uint64_t v) {
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::uint64_t bits(double d) { return std::bit_cast<std::uint64_t>(d == 0.0 ? 0.0 : d); }

/// Moves exact lattice multiples of the real offset into the integer index.
void normalize(Point& p, int i, double h) {
    const double r = p.off[i].real() / h;
    const double k = std::round(r);
    if (r == k && std::abs(k) < 1e15) {
        p.idx[i] += static_cast<std::int64_t>(k);
        p.off[i] = cplx{0.0, p.off[i].imag()};
    }
}

void check_dims(int dims) {
    if (dims < 1 || dims > kMaxDim) throw ShapeError("state dimension must be in [1, 4]");
}

void check_coord(int coord, int dims) {
    if (coord < 0 || coord >= dims) {
        throw ShapeError("coordinate index " + std::to_string(coord) + " out of range for a " +
                         std::to_string(dims) + "-coordinate state");
    }
}

class GaussianLeaf final : public Node {
public:
    explicit GaussianLeaf(GaussTerm t) : Node(static_cast<int>(t.alpha.size())), t_(std::move(t)) {}
    cplx compute(const Point& p, EvalContext& ctx) const override {
        cplx e{0.0, 0.0};
        for (int i = 0; i < dims(); ++i) {
            const cplx x = p.coord(i, ctx.h());
            e += (t_.alpha[i] * x + t_.beta[i]) * x;
        }
        return t_.scale * std::exp(e);
    }
    std::string kind() const override { return "GaussianLeaf"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override { return std::vector<GaussTerm>{t_}; }

private:
    GaussTerm t_;
};

class GaussianSumLeaf final : public Node {
public:
    GaussianSumLeaf(std::vector<GaussTerm> terms, int dims) : Node(dims), terms_(std::move(terms)) {}
    cplx compute(const Point& p, EvalContext& ctx) const override {
        std::array<cplx, kMaxDim> x{};
        for (int i = 0; i < dims(); ++i) x[i] = p.coord(i, ctx.h());
        cplx acc{0.0, 0.0};
        for (const auto& t : terms_) {
            cplx e{0.0, 0.0};
            for (int i = 0; i < dims(); ++i) e += (t.alpha[i] * x[i] + t.beta[i]) * x[i];
            acc += t.scale * std::exp(e);
        }
        return acc;
    }
    std::string kind() const override { return "GaussianSum"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override { return terms_; }

private:
    std::vector<GaussTerm> terms_;
};

class ScaleNode final : public Node {
public:
    ScaleNode(cplx c, State s) : Node(s->dims()), c_(c), s_(std::move(s)) { depth_ = s_->conv_depth(); }
    cplx compute(const Point& p, EvalContext& ctx) const override { return c_ * ctx.eval(*s_, p); }
    std::string kind() const override { return "Scale"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override {
        auto g = s_->gaussian_form();
        if (g) {
            for (auto& t : *g) t.scale *= c_;
        }
        return g;
    }

private:
    cplx c_;
    State s_;
};

class SumNode final : public Node {
public:
    SumNode(int dims, std::vector<State> parts) : Node(dims), parts_(std::move(parts)) {
        for (const auto& s : parts_) {
            if (s->dims() != dims) throw ShapeError("sum of states with different dimensions");
            for (int i = 0; i < kMaxDim; ++i) depth_[i] = std::max(depth_[i], s->conv_depth()[i]);
        }
    }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        cplx acc{0.0, 0.0};
        for (const auto& s : parts_) acc += ctx.eval(*s, p);
        return acc;
    }
    std::string kind() const override { return "Sum"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override {
        std::vector<GaussTerm> out;
        for (const auto& s : parts_) {
            auto g = s->gaussian_form();
            if (!g) return std::nullopt;
            out.insert(out.end(), g->begin(), g->end());
        }
        return out;
    }

private:
    std::vector<State> parts_;
};

class ShiftNode final : public Node {
public:
    ShiftNode(int coord, cplx a, State s) : Node(s->dims()), coord_(coord), a_(a), s_(std::move(s)) {
        check_coord(coord_, dims());
        depth_ = s_->conv_depth();
    }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        Point q = p;
        q.off[coord_] += a_;
        normalize(q, coord_, ctx.h());
        return ctx.eval(*s_, q);
    }
    std::string kind() const override { return "Shift"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override {
        auto g = s_->gaussian_form();
        if (g) {
            for (auto& t : *g) {
                const cplx al = t.alpha[coord_];
                const cplx be = t.beta[coord_];
                t.scale *= std::exp((al * a_ + be) * a_);
                t.beta[coord_] = be + 2.0 * al * a_;
            }
        }
        return g;
    }

private:
    int coord_;
    cplx a_;
    State s_;
};

class PermuteNode final : public Node {
public:
    PermuteNode(int i, int j, State s) : Node(s->dims()), i_(i), j_(j), s_(std::move(s)) {
        check_coord(i_, dims());
        check_coord(j_, dims());
        depth_ = s_->conv_depth();
        std::swap(depth_[i_], depth_[j_]);
    }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        Point q = p;
        std::swap(q.off[i_], q.off[j_]);
        std::swap(q.idx[i_], q.idx[j_]);
        return ctx.eval(*s_, q);
    }
    std::string kind() const override { return "Permute"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override {
        auto g = s_->gaussian_form();
        if (g) {
            for (auto& t : *g) {
                std::swap(t.alpha[i_], t.alpha[j_]);
                std::swap(t.beta[i_], t.beta[j_]);
            }
        }
        return g;
    }

private:
    int i_;
    int j_;
    State s_;
};

class ExpLinearNode final : public Node {
public:
    ExpLinearNode(cplx c0, std::vector<cplx> c, State s)
        : Node(s->dims()), c0_(c0), c_(std::move(c)), s_(std::move(s)) {
        if (static_cast<int>(c_.size()) != dims()) throw ShapeError("exp_linear_mul: coefficient count mismatch");
        depth_ = s_->conv_depth();
    }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        cplx e = c0_;
        for (int i = 0; i < dims(); ++i) e += c_[i] * p.coord(i, ctx.h());
        return std::exp(e) * ctx.eval(*s_, p);
    }
    std::string kind() const override { return "ExpLinearMul"; }
    std::optional<std::vector<GaussTerm>> gaussian_form() const override {
        auto g = s_->gaussian_form();
        if (g) {
            for (auto& t : *g) {
                t.scale *= std::exp(c0_);
                for (int i = 0; i < dims(); ++i) t.beta[i] += c_[i];
            }
        }
        return g;
    }

private:
    cplx c0_;
    std::vector<cplx> c_;
    State s_;
};

class DMulNode final : public Node {
public:
    DMulNode(std::shared_ptr<const GammaEvaluator> g, cplx a, std::vector<cplx> c, cplx d, State s)
        : Node(s->dims()), g_(std::move(g)), a_(a), c_(std::move(c)), d_(d), s_(std::move(s)) {
        if (static_cast<int>(c_.size()) != dims()) throw ShapeError("d_mul: coefficient count mismatch");
        depth_ = s_->conv_depth();
    }
    bool memoizable() const noexcept override { return true; }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        cplx z = d_;
        for (int i = 0; i < dims(); ++i) {
            if (c_[i] != 0.0) z += c_[i] * p.coord(i, ctx.h());
        }
        return ctx.cached_D(*g_, a_, z) * ctx.eval(*s_, p);
    }
    std::string kind() const override { return "DMul"; }

private:
    std::shared_ptr<const GammaEvaluator> g_;
    cplx a_;
    std::vector<cplx> c_;
    cplx d_;
    State s_;
};

class FuncMulNode final : public Node {
public:
    FuncMulNode(PointFunction f, std::string name, State s)
        : Node(s->dims()), f_(std::move(f)), name_(std::move(name)), s_(std::move(s)) {
        depth_ = s_->conv_depth();
    }
    bool memoizable() const noexcept override { return true; }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        std::array<cplx, kMaxDim> x{};
        for (int i = 0; i < dims(); ++i) x[i] = p.coord(i, ctx.h());
        return f_(std::span<const cplx>(x.data(), static_cast<std::size_t>(dims()))) * ctx.eval(*s_, p);
    }
    std::string kind() const override { return "FuncMul(" + name_ + ")"; }

private:
    PointFunction f_;
    std::string name_;
    State s_;
};

/// D_a(p) acting on one coordinate through the kernel D_{-omega''-a}(y)/A(a).
/// The real-line kernel has poles at y = +-a; the prescription a -> a - i0
/// puts the contour above y = a and below y = -a. The contour is moved to
/// Im y = -eta and the residue at y = a is subtracted.
class KernelConvNode final : public Node {
public:
    KernelConvNode(std::shared_ptr<const GammaEvaluator> g, int coord, cplx a, State s, KernelOptions opts)
        : Node(s->dims()), coord_(coord), a_(a), s_(std::move(s)) {
        check_coord(coord_, dims());
        depth_ = s_->conv_depth();
        depth_[coord_] += 1;
        const auto& num = g->numerics();
        h_ = num.kernel_step;
        eta_ = opts.lift > 0.0 ? opts.lift : num.kernel_lift;
        if (eta_ >= 2.0 * std::min(g->params().im_omega(), g->params().im_omega_p())) {
            throw DomainError("kernel_conv: contour lift reaches the next pole row of the kernel");
        }
        half_ = opts.midpoint ? 0.5 * h_ : 0.0;
        if (std::abs(a_.imag()) >= 0.5 * eta_) {
            throw DomainError("kernel_conv: |Im a| must stay below half the kernel lift (kernel would not decay)");
        }
        const cplx w = g->params().omega_pp;
        const cplx c = -w - a_;
        const cplx norm = 1.0 / g->A(a_);
        const auto J = static_cast<std::int64_t>(std::ceil((std::abs(a_.real()) + num.kernel_halfwidth) / h_));
        j0_ = -J;
        weights_.reserve(static_cast<std::size_t>(2 * J + 1));
        for (std::int64_t j = -J; j <= J; ++j) {
            const cplx y{static_cast<double>(j) * h_ + half_, -eta_};
            weights_.push_back(h_ * norm * g->D(c, y));
        }
        residue_ = -2.0 * kPi * kI * std::exp(-2.0 * kPi * kI * c * a_) * g->residue_at_pole() /
                   g->gamma(2.0 * a_ + w) * norm;
    }
    bool memoizable() const noexcept override { return true; }
    cplx compute(const Point& p, EvalContext& ctx) const override {
        if (ctx.h() != h_) throw ShapeError("kernel_conv: evaluation lattice step differs from kernel_step");
        Point q = p;
        q.off[coord_] += cplx{-half_, eta_};
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < weights_.size(); ++k) {
            q.idx[coord_] = p.idx[coord_] - (j0_ + static_cast<std::int64_t>(k));
            acc += weights_[k] * ctx.eval(*s_, q);
        }
        Point r = p;
        r.off[coord_] -= a_;
        normalize(r, coord_, h_);
        return acc + residue_ * ctx.eval(*s_, r);
    }
    std::string kind() const override { return "KernelConv"; }

private:
    int coord_;
    cplx a_;
    State s_;
    double h_ = 0.0;
    double eta_ = 0.0;
    double half_ = 0.0;
    std::int64_t j0_ = 0;
    std::vector<cplx> weights_;
    cplx residue_{};
};

}  // namespace

Point make_point(std::span<const cplx> x) {
    check_dims(static_cast<int>(x.size()));
    Point p;
    p.n = static_cast<int>(x.size());
    for (int i = 0; i < p.n; ++i) p.off[i] = x[i];
    return p;
}

std::size_t EvalContext::KeyHash::operator()(const Key& k) const noexcept {
    std::size_t seed = std::hash<const void*>{}(k.node);
    for (int i = 0; i < k.p.n; ++i) {
        hash_mix(seed, bits(k.p.off[i].real()));
        hash_mix(seed, bits(k.p.off[i].imag()));
        hash_mix(seed, static_cast<std::uint64_t>(k.p.idx[i]));
    }
    return seed;
}

bool EvalContext::DKey::operator==(const DKey& o) const noexcept {
    return g == o.g && bits(a.real()) == bits(o.a.real()) && bits(a.imag()) == bits(o.a.imag()) &&
           bits(z.real()) == bits(o.z.real()) && bits(z.imag()) == bits(o.z.imag());
}

std::size_t EvalContext::DKeyHash::operator()(const DKey& k) const noexcept {
    std::size_t seed = std::hash<const void*>{}(k.g);
    hash_mix(seed, bits(k.a.real()));
    hash_mix(seed, bits(k.a.imag()));
    hash_mix(seed, bits(k.z.real()));
    hash_mix(seed, bits(k.z.imag()));
    return seed;
}

cplx EvalContext::eval(const Node& node, const Point& p) {
    if (!memoize_ || !node.memoizable()) return node.compute(p, *this);
    const Key key{&node, p};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const cplx v = node.compute(p, *this);
    memo_.emplace(key, v);
    return v;
}

cplx EvalContext::cached_D(const GammaEvaluator& g, cplx a, cplx z) {
    if (a == 0.0) return 1.0;
    if (!memoize_) return g.D(a, z);
    const DKey key{&g, a, z};
    if (auto it = dcache_.find(key); it != dcache_.end()) return it->second;
    const cplx v = g.D(a, z);
    dcache_.emplace(key, v);
    return v;
}

State make_gaussian(std::vector<cplx> alphas, std::vector<cplx> betas, cplx scale) {
    return make_gaussian(GaussTerm{scale, std::move(alphas), std::move(betas)});
}

State make_gaussian(const GaussTerm& term) {
    check_dims(static_cast<int>(term.alpha.size()));
    if (term.alpha.size() != term.beta.size()) throw ShapeError("make_gaussian: alpha/beta size mismatch");
    for (const auto& al : term.alpha) {
        if (!(al.real() < 0.0)) throw DomainError("make_gaussian: Re(alpha) must be negative");
    }
    return std::make_shared<GaussianLeaf>(term);
}

State make_gaussian_sum(const std::vector<GaussTerm>& terms, int dims) {
    check_dims(dims);
    std::vector<GaussTerm> merged;
    for (const auto& t : terms) {
        if (static_cast<int>(t.alpha.size()) != dims || t.beta.size() != t.alpha.size()) {
            throw ShapeError("make_gaussian_sum: term dimension mismatch");
        }
        for (const auto& al : t.alpha) {
            if (!(al.real() < 0.0)) throw DomainError("make_gaussian_sum: Re(alpha) must be negative");
        }
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&t](const GaussTerm& m) { return m.alpha == t.alpha && m.beta == t.beta; });
        if (it != merged.end()) {
            it->scale += t.scale;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const GaussTerm& t) { return t.scale == 0.0; });
    return std::make_shared<GaussianSumLeaf>(std::move(merged), dims);
}

State collapse_gaussian(const State& s) {
    if (dynamic_cast<const GaussianSumLeaf*>(s.get()) != nullptr) return s;
    auto terms = s->gaussian_form();
    if (!terms) return s;
    return make_gaussian_sum(*terms, s->dims());
}

State make_zero(int dims) {
    check_dims(dims);
    return std::make_shared<SumNode>(dims, std::vector<State>{});
}

State scale_state(cplx c, State s) { return std::make_shared<ScaleNode>(c, std::move(s)); }

State sum_states(std::vector<State> parts) {
    if (parts.empty()) throw ShapeError("sum_states: empty list");
    if (parts.size() == 1) return parts.front();
    const int dims = parts.front()->dims();
    return std::make_shared<SumNode>(dims, std::move(parts));
}

State shift_state(int coord, cplx a, State s) {
    if (a == 0.0) return s;
    return std::make_shared<ShiftNode>(coord, a, std::move(s));
}

State permute_state(int i, int j, State s) {
    if (i == j) return s;
    return std::make_shared<PermuteNode>(i, j, std::move(s));
}

State exp_linear_mul(cplx c0, std::vector<cplx> coeffs, State s) {
    return std::make_shared<ExpLinearNode>(c0, std::move(coeffs), std::move(s));
}

State d_mul(std::shared_ptr<const GammaEvaluator> g, cplx a, std::vector<cplx> coeffs, cplx d, State s) {
    if (a == 0.0) return s;
    return std::make_shared<DMulNode>(std::move(g), a, std::move(coeffs), d, std::move(s));
}

State func_mul(PointFunction f, std::string name, State s) {
    return std::make_shared<FuncMulNode>(std::move(f), std::move(name), std::move(s));
}

State kernel_conv(std::shared_ptr<const GammaEvaluator> g, int coord, cplx a, State s, KernelOptions opts) {
    if (a == 0.0) return s;
    return std::make_shared<KernelConvNode>(std::move(g), coord, a, std::move(s), opts);
}

std::optional<std::vector<GaussTerm>> gaussian_terms(const State& s) { return s->gaussian_form(); }

cplx eval_state(const State& s, const Point& p, EvalContext& ctx) {
    if (p.n != s->dims()) throw ShapeError("eval_state: point dimension does not match state");
    for (int i = 0; i < s->dims(); ++i) {
        if (s->conv_depth()[i] > kMaxConvDepth) {
            throw DomainError("eval_state: kernel convolution depth on coordinate " + std::to_string(i) +
                              " exceeds " + std::to_string(kMaxConvDepth));
        }
    }
    Point q = p;
    for (int i = 0; i < q.n; ++i) normalize(q, i, ctx.h());
    return ctx.eval(*s, q);
}

cplx eval_state(const State& s, std::span<const cplx> x, EvalContext& ctx) {
    return eval_state(s, make_point(x), ctx);
}

// ---- grids -------------------------------------------------------------------

GridData make_grid(int n, double L, int N) {
    check_dims(n);
    if (N < 4 || N % 2 != 0) throw DomainError("grid: N must be an even number of at least 4");
    if (!(L > 0.0)) throw DomainError("grid: L must be positive");
    GridData g;
    g.n = n;
    g.L = L;
    g.N = N;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(N);
    g.data.assign(total, cplx{0.0, 0.0});
    return g;
}

GridData to_grid(const State& s, int n, double L, int N, EvalContext& ctx) {
    if (s->dims() != n) throw ShapeError("to_grid: state dimension mismatch");
    GridData g = make_grid(n, L, N);
    std::array<int, kMaxDim> j{};
    std::array<cplx, kMaxDim> x{};
    for (std::size_t flat = 0; flat < g.data.size(); ++flat) {
        std::size_t rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            j[i] = static_cast<int>(rem % static_cast<std::size_t>(N));
            rem /= static_cast<std::size_t>(N);
        }
        for (int i = 0; i < n; ++i) x[i] = g.x(j[i]);
        g.data[flat] = eval_state(s, std::span<const cplx>(x.data(), static_cast<std::size_t>(n)), ctx);
    }
    return g;
}

double state_distance(const GridData& a, const GridData& b) {
    if (!a.compatible(b) || a.data.size() != b.data.size()) throw ShapeError("state_distance: mismatched grids");
    double diff = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        diff += std::norm(a.data[k] - b.data[k]);
        na += std::norm(a.data[k]);
        nb += std::norm(b.data[k]);
    }
    const double den = std::sqrt(std::max(na, nb));
    return den == 0.0 ? 0.0 : std::sqrt(diff) / den;
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xffU));
}

std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        const int c = is.get();
        if (c == EOF) throw std::runtime_error("read_grid_binary: truncated file");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

}  // namespace

void write_grid_binary(const GridData& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    put_u64(os, static_cast<std::uint64_t>(g.n));
    put_u64(os, std::bit_cast<std::uint64_t>(g.L));
    put_u64(os, static_cast<std::uint64_t>(g.N));
    for (const auto& v : g.data) {
        put_u64(os, std::bit_cast<std::uint64_t>(v.real()));
        put_u64(os, std::bit_cast<std::uint64_t>(v.imag()));
    }
}

GridData read_grid_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    const auto n = static_cast<int>(get_u64(is));
    const double L = std::bit_cast<double>(get_u64(is));
    const auto N = static_cast<int>(get_u64(is));
    GridData g = make_grid(n, L, N);
    for (auto& v : g.data) {
        const double re = std::bit_cast<double>(get_u64(is));
        const double im = std::bit_cast<double>(get_u64(is));
        v = cplx{re, im};
    }
    return g;
}

void write_grid_csv(const GridData& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    for (int i = 0; i < g.n; ++i) os << "x" << (i + 1) << ",";
    os << "re,im\n";
    os << std::setprecision(17);
    for (std::size_t flat = 0; flat < g.data.size(); ++flat) {
        std::size_t rem = flat;
        std::array<int, kMaxDim> j{};
        for (int i = g.n - 1; i >= 0; --i) {
            j[i] = static_cast<int>(rem % static_cast<std::size_t>(g.N));
            rem /= static_cast<std::size_t>(g.N);
        }
        for (int i = 0; i < g.n; ++i) os << g.x(j[i]) << ",";
        os << g.data[flat].real() << "," << g.data[flat].imag() << "\n";
    }
}

}  // namespace modrop
