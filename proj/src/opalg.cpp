#include "modrop/opalg.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace modrop {

namespace {

void check_coord(int coord, int dims) {
    if (dims < 1 || dims > kMaxDim || coord < 0 || coord >= dims) {
        throw ShapeError("operator coordinate " + std::to_string(coord) + " out of range for " +
                         std::to_string(dims) + " coordinates");
    }
}

FDOperator single(int dims, Primitive p) { return FDOperator::primitive(dims, std::move(p)); }

std::size_t grid_total(int n, int N) {
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(N);
    return total;
}

// Unflattens a row-major index (coordinate 0 slowest).
std::array<int, kMaxDim> unflatten(std::size_t flat, int n, int N) {
    std::array<int, kMaxDim> j{};
    for (int i = n - 1; i >= 0; --i) {
        j[i] = static_cast<int>(flat % static_cast<std::size_t>(N));
        flat /= static_cast<std::size_t>(N);
    }
    return j;
}

struct FftPlans {
    fftw_plan fwd;
    fftw_plan bwd;
};

std::mutex g_plan_mutex;

FftPlans plans_for(int N) {
    static std::map<int, FftPlans> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(N)));
    FftPlans p{fftw_plan_dft_1d(N, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE),
               fftw_plan_dft_1d(N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE)};
    fftw_free(buf);
    cache.emplace(N, p);
    return p;
}

void pointwise(GridData& g, const std::function<cplx(std::span<const cplx>)>& f) {
    std::array<cplx, kMaxDim> x{};
    for (std::size_t flat = 0; flat < g.data.size(); ++flat) {
        const auto j = unflatten(flat, g.n, g.N);
        for (int i = 0; i < g.n; ++i) x[i] = g.x(j[i]);
        g.data[flat] *= f(std::span<const cplx>(x.data(), static_cast<std::size_t>(g.n)));
    }
}

void permute_grid(GridData& g, int a, int b) {
    if (a == b) return;
    std::vector<cplx> out(g.data.size());
    for (std::size_t flat = 0; flat < g.data.size(); ++flat) {
        auto j = unflatten(flat, g.n, g.N);
        std::swap(j[a], j[b]);
        std::size_t dst = 0;
        for (int i = 0; i < g.n; ++i) dst = dst * static_cast<std::size_t>(g.N) + static_cast<std::size_t>(j[i]);
        out[dst] = g.data[flat];
    }
    g.data = std::move(out);
}

struct BitsHash {
    std::size_t operator()(const cplx& z) const noexcept {
        return std::hash<double>{}(z.real()) ^ (std::hash<double>{}(z.imag()) * 1000003U);
    }
};

State apply_primitive(const Primitive& p, const State& s) {
    using K = Primitive::Kind;
    switch (p.kind) {
        case K::Shift: return shift_state(p.coord, p.a, s);
        case K::ExpMul: return exp_linear_mul(p.c0, p.coeffs, s);
        case K::DMulX: return d_mul(p.gamma, p.a, p.coeffs, p.c0, s);
        case K::DKernelP: return kernel_conv(p.gamma, p.coord, p.a, s, p.kernel);
        case K::MomentumMul:
            throw UnsupportedOperand("momentum multiplier '" + p.name + "' acts on grids only");
        case K::FuncMulX: return func_mul(p.xfun, p.name, s);
        case K::Fresnel: {
            const auto terms = gaussian_terms(s);
            if (!terms) throw UnsupportedOperand("fresnel: operand is not a closed-form Gaussian combination");
            const cplx t = cplx{0.0, static_cast<double>(p.sign)} / (4.0 * kPi);
            std::vector<State> parts;
            parts.reserve(terms->size());
            for (const auto& term : *terms) parts.push_back(make_gaussian(heat_flow(term, p.coord, t)));
            if (parts.empty()) return make_zero(s->dims());
            return sum_states(std::move(parts));
        }
        case K::Permute: return permute_state(p.coord, p.coord2, s);
    }
    throw std::logic_error("unknown primitive");
}

void apply_primitive(const Primitive& p, GridData& g) {
    using K = Primitive::Kind;
    switch (p.kind) {
        case K::Shift: {
            if (p.a.imag() != 0.0) {
                throw UnsupportedOperand("grid backend: complex shift " + p.describe() + " is not representable");
            }
            const double a = p.a.real();
            spectral_multiply(g, p.coord, [a](double k) { return std::exp(2.0 * kPi * kI * a * k); });
            return;
        }
        case K::ExpMul:
            pointwise(g, [&p](std::span<const cplx> x) {
                cplx e = p.c0;
                for (std::size_t i = 0; i < x.size(); ++i) e += p.coeffs[i] * x[i];
                return std::exp(e);
            });
            return;
        case K::DMulX: {
            std::unordered_map<cplx, cplx, BitsHash> cache;
            pointwise(g, [&p, &cache](std::span<const cplx> x) {
                cplx z = p.c0;
                for (std::size_t i = 0; i < x.size(); ++i) z += p.coeffs[i] * x[i];
                auto it = cache.find(z);
                if (it != cache.end()) return it->second;
                const cplx v = p.gamma->D(p.a, z);
                cache.emplace(z, v);
                return v;
            });
            return;
        }
        case K::DKernelP: {
            const auto& gm = *p.gamma;
            const cplx a = p.a;
            spectral_multiply(g, p.coord, [&gm, a](double k) { return gm.D(a, k); });
            return;
        }
        case K::MomentumMul: spectral_multiply(g, p.coord, p.pfun); return;
        case K::FuncMulX: pointwise(g, p.xfun); return;
        case K::Fresnel: {
            const double sg = p.sign;
            spectral_multiply(g, p.coord, [sg](double k) { return std::exp(-sg * kI * kPi * k * k); });
            return;
        }
        case K::Permute: permute_grid(g, p.coord, p.coord2); return;
    }
}

}  // namespace

std::string Primitive::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Shift: os << "shift(x" << coord + 1 << ", " << a << ")"; break;
        case Kind::ExpMul: os << "expx"; break;
        case Kind::DMulX: os << "D_" << a << "(x)"; break;
        case Kind::DKernelP: os << "D_" << a << "(p" << coord + 1 << ")"; break;
        case Kind::MomentumMul: os << name << "(p" << coord + 1 << ")"; break;
        case Kind::FuncMulX: os << name << "(x)"; break;
        case Kind::Fresnel: os << "fresnel(p" << coord + 1 << ", " << sign << ")"; break;
        case Kind::Permute: os << "P" << coord + 1 << coord2 + 1; break;
    }
    return os.str();
}

class OpNode {
public:
    enum class Kind { Prim, Prod, Sum };
    Kind kind = Kind::Prod;
    Primitive prim;
    std::vector<std::shared_ptr<const OpNode>> factors;                  // Prod, leftmost first
    std::vector<std::pair<cplx, std::shared_ptr<const OpNode>>> parts;  // Sum
};

namespace {

using NodePtr = std::shared_ptr<const OpNode>;

NodePtr make_prod(std::vector<NodePtr> factors) {
    auto n = std::make_shared<OpNode>();
    n->kind = OpNode::Kind::Prod;
    n->factors = std::move(factors);
    return n;
}

NodePtr make_sum(std::vector<std::pair<cplx, NodePtr>> parts) {
    auto n = std::make_shared<OpNode>();
    n->kind = OpNode::Kind::Sum;
    n->parts = std::move(parts);
    return n;
}

State apply_node(const OpNode& n, const State& s) {
    switch (n.kind) {
        case OpNode::Kind::Prim: return apply_primitive(n.prim, s);
        case OpNode::Kind::Prod: {
            State cur = s;
            for (auto it = n.factors.rbegin(); it != n.factors.rend(); ++it) cur = apply_node(**it, cur);
            return cur;
        }
        case OpNode::Kind::Sum: {
            std::vector<State> out;
            out.reserve(n.parts.size());
            for (const auto& [c, child] : n.parts) {
                State r = apply_node(*child, s);
                out.push_back(c == 1.0 ? r : scale_state(c, r));
            }
            if (out.empty()) return make_zero(s->dims());
            return collapse_gaussian(sum_states(std::move(out)));
        }
    }
    throw std::logic_error("unknown operator node");
}

void apply_node(const OpNode& n, GridData& g) {
    switch (n.kind) {
        case OpNode::Kind::Prim: apply_primitive(n.prim, g); return;
        case OpNode::Kind::Prod:
            for (auto it = n.factors.rbegin(); it != n.factors.rend(); ++it) apply_node(**it, g);
            return;
        case OpNode::Kind::Sum: {
            GridData out = make_grid(g.n, g.L, g.N);
            for (const auto& [c, child] : n.parts) {
                GridData cur = g;
                apply_node(*child, cur);
                for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += c * cur.data[k];
            }
            g = std::move(out);
            return;
        }
    }
}

NodePtr transpose_node(const NodePtr& n) {
    switch (n->kind) {
        case OpNode::Kind::Prim: {
            auto t = std::make_shared<OpNode>(*n);
            auto& f = t->prim;
            if (f.kind == Primitive::Kind::Shift) f.a = -f.a;
            if (f.kind == Primitive::Kind::MomentumMul) {
                auto fn = f.pfun;
                f.pfun = [fn](double k) { return fn(-k); };
                f.name += "^T";
            }
            return t;
        }
        case OpNode::Kind::Prod: {
            std::vector<NodePtr> fs;
            for (auto it = n->factors.rbegin(); it != n->factors.rend(); ++it) fs.push_back(transpose_node(*it));
            return make_prod(std::move(fs));
        }
        case OpNode::Kind::Sum: {
            std::vector<std::pair<cplx, NodePtr>> ps;
            for (const auto& [c, child] : n->parts) ps.emplace_back(c, transpose_node(child));
            return make_sum(std::move(ps));
        }
    }
    throw std::logic_error("unknown operator node");
}

std::size_t node_size(const OpNode& n) {
    switch (n.kind) {
        case OpNode::Kind::Prim: return 1;
        case OpNode::Kind::Prod: {
            std::size_t k = 0;
            for (const auto& f : n.factors) k += node_size(*f);
            return k;
        }
        case OpNode::Kind::Sum: {
            std::size_t k = 0;
            for (const auto& pr : n.parts) k += node_size(*pr.second);
            return k;
        }
    }
    return 0;
}

}  // namespace

FDOperator::FDOperator(int dims) : dims_(dims) {
    if (dims < 1 || dims > kMaxDim) throw ShapeError("operator dimension must be in [1, 4]");
}

FDOperator FDOperator::identity(int dims) {
    FDOperator op(dims);
    op.node_ = make_prod({});
    return op;
}

FDOperator FDOperator::primitive(int dims, Primitive p) {
    FDOperator op(dims);
    auto n = std::make_shared<OpNode>();
    n->kind = OpNode::Kind::Prim;
    n->prim = std::move(p);
    op.node_ = n;
    return op;
}

bool FDOperator::is_zero() const noexcept { return node_ == nullptr; }

bool FDOperator::is_identity() const noexcept {
    return node_ && node_->kind == OpNode::Kind::Prod && node_->factors.empty();
}

std::size_t FDOperator::size() const { return node_ ? node_size(*node_) : 0; }

State FDOperator::apply(const State& s) const {
    if (s->dims() != dims_) throw ShapeError("operator and state dimensions differ");
    if (!node_) return make_zero(dims_);
    return apply_node(*node_, s);
}

GridData FDOperator::apply(const GridData& g) const {
    if (g.n != dims_) throw ShapeError("operator and grid dimensions differ");
    if (!node_) return make_grid(g.n, g.L, g.N);
    GridData out = g;
    apply_node(*node_, out);
    return out;
}

FDOperator FDOperator::transpose() const {
    if (!node_) return *this;
    return FDOperator(dims_, transpose_node(node_));
}

FDOperator& FDOperator::operator+=(const FDOperator& o) {
    if (o.dims_ != dims_) throw ShapeError("sum of operators with different dimensions");
    if (!o.node_) return *this;
    if (!node_) {
        node_ = o.node_;
        return *this;
    }
    std::vector<std::pair<cplx, NodePtr>> ps;
    for (const NodePtr* n : std::array<const NodePtr*, 2>{&node_, &o.node_}) {
        if ((*n)->kind == OpNode::Kind::Sum) {
            ps.insert(ps.end(), (*n)->parts.begin(), (*n)->parts.end());
        } else {
            ps.emplace_back(1.0, *n);
        }
    }
    node_ = make_sum(std::move(ps));
    return *this;
}

FDOperator operator*(const FDOperator& a, const FDOperator& b) {
    if (a.dims_ != b.dims_) throw ShapeError("product of operators with different dimensions");
    if (!a.node_ || !b.node_) return FDOperator(a.dims_);
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    std::vector<NodePtr> fs;
    for (const NodePtr* n : std::array<const NodePtr*, 2>{&a.node_, &b.node_}) {
        if ((*n)->kind == OpNode::Kind::Prod) {
            fs.insert(fs.end(), (*n)->factors.begin(), (*n)->factors.end());
        } else {
            fs.push_back(*n);
        }
    }
    return FDOperator(a.dims_, make_prod(std::move(fs)));
}

FDOperator operator*(cplx c, const FDOperator& a) {
    if (!a.node_ || c == 1.0) return a;
    if (c == 0.0) return FDOperator(a.dims_);
    if (a.node_->kind == OpNode::Kind::Sum) {
        auto ps = a.node_->parts;
        for (auto& pr : ps) pr.first *= c;
        return FDOperator(a.dims_, make_sum(std::move(ps)));
    }
    return FDOperator(a.dims_, make_sum({{c, a.node_}}));
}

FDOperator compose(const std::vector<FDOperator>& ops) {
    if (ops.empty()) throw ShapeError("compose: empty operator list");
    FDOperator out = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) out = out * ops[i];
    return out;
}

FDOperator op_shift(int dims, int coord, cplx a) {
    check_coord(coord, dims);
    Primitive p;
    p.kind = Primitive::Kind::Shift;
    p.coord = coord;
    p.a = a;
    return single(dims, std::move(p));
}

FDOperator op_exp_p(int dims, int coord, cplx c) { return op_shift(dims, coord, c / (2.0 * kPi * kI)); }

FDOperator op_exp_x(int dims, cplx c0, std::vector<cplx> coeffs) {
    if (static_cast<int>(coeffs.size()) != dims) throw ShapeError("op_exp_x: coefficient count mismatch");
    Primitive p;
    p.kind = Primitive::Kind::ExpMul;
    p.c0 = c0;
    p.coeffs = std::move(coeffs);
    return single(dims, std::move(p));
}

FDOperator op_scalar(int dims, cplx c) { return c * FDOperator::identity(dims); }

FDOperator op_permute(int dims, int i, int j) {
    check_coord(i, dims);
    check_coord(j, dims);
    Primitive p;
    p.kind = Primitive::Kind::Permute;
    p.coord = i;
    p.coord2 = j;
    return single(dims, std::move(p));
}

FDOperator d_of_x(std::shared_ptr<const GammaEvaluator> g, int dims, cplx a, std::vector<cplx> coeffs, cplx d) {
    if (static_cast<int>(coeffs.size()) != dims) throw ShapeError("d_of_x: coefficient count mismatch");
    if (a == 0.0) return FDOperator::identity(dims);
    Primitive p;
    p.kind = Primitive::Kind::DMulX;
    p.a = a;
    p.coeffs = std::move(coeffs);
    p.c0 = d;
    p.gamma = std::move(g);
    return single(dims, std::move(p));
}

FDOperator d_of_p(std::shared_ptr<const GammaEvaluator> g, int dims, int coord, cplx a, KernelOptions opts) {
    check_coord(coord, dims);
    if (a == 0.0) return FDOperator::identity(dims);
    const double lift = opts.lift > 0.0 ? opts.lift : g->numerics().kernel_lift;
    if (std::abs(a.imag()) >= 0.5 * lift) {
        throw DomainError("d_of_p: kernel does not decay for |Im a| >= half the contour lift");
    }
    Primitive p;
    p.kind = Primitive::Kind::DKernelP;
    p.coord = coord;
    p.a = a;
    p.kernel = opts;
    p.gamma = std::move(g);
    return single(dims, std::move(p));
}

FDOperator momentum_multiplier(int dims, int coord, std::function<cplx(double)> f, std::string name) {
    check_coord(coord, dims);
    Primitive p;
    p.kind = Primitive::Kind::MomentumMul;
    p.coord = coord;
    p.pfun = std::move(f);
    p.name = std::move(name);
    return single(dims, std::move(p));
}

FDOperator op_func_x(int dims, PointFunction f, std::string name) {
    Primitive p;
    p.kind = Primitive::Kind::FuncMulX;
    p.xfun = std::move(f);
    p.name = std::move(name);
    return single(dims, std::move(p));
}

FDOperator fresnel(int dims, int coord, int sign) {
    check_coord(coord, dims);
    if (sign != 1 && sign != -1) throw DomainError("fresnel: sign must be +1 or -1");
    Primitive p;
    p.kind = Primitive::Kind::Fresnel;
    p.coord = coord;
    p.sign = sign;
    return single(dims, std::move(p));
}

GaussTerm heat_flow(const GaussTerm& term, int coord, cplx t) {
    GaussTerm out = term;
    const cplx al = term.alpha.at(static_cast<std::size_t>(coord));
    const cplx be = term.beta.at(static_cast<std::size_t>(coord));
    const cplx kappa = 1.0 - 4.0 * al * t;
    out.alpha[coord] = al / kappa;
    out.beta[coord] = be / kappa;
    out.scale = term.scale * std::exp(be * be * t / kappa) / std::sqrt(kappa);
    if (!(out.alpha[coord].real() < 0.0)) throw DomainError("heat_flow: result is not decaying");
    return out;
}

OperatorMatrix OperatorMatrix::identity(int dims) {
    return diag(FDOperator::identity(dims), FDOperator::identity(dims));
}

OperatorMatrix OperatorMatrix::diag(const FDOperator& a, const FDOperator& d) {
    return OperatorMatrix{{a, FDOperator::zero(a.dims()), FDOperator::zero(a.dims()), d}};
}

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    }
    return out;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) { return matmul(a, b); }

OperatorMatrix operator*(cplx c, const OperatorMatrix& a) {
    OperatorMatrix out = a;
    for (auto& e : out.e) e = c * e;
    return out;
}

OperatorMatrix operator*(const FDOperator& op, const OperatorMatrix& a) {
    OperatorMatrix out = a;
    for (auto& e : out.e) e = op * e;
    return out;
}

OperatorMatrix operator*(const OperatorMatrix& a, const FDOperator& op) {
    OperatorMatrix out = a;
    for (auto& e : out.e) e = e * op;
    return out;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out = a;
    for (int k = 0; k < 4; ++k) out.e[k] += b.e[k];
    return out;
}

void spectral_multiply(GridData& g, int coord, const std::function<cplx(double)>& f) {
    if (coord < 0 || coord >= g.n) throw ShapeError("spectral_multiply: axis out of range");
    const int N = g.N;
    const FftPlans plans = plans_for(N);
    std::vector<cplx> mult(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m) {
        const int mm = m < N / 2 ? m : m - N;
        mult[static_cast<std::size_t>(m)] = f(mm / (2.0 * g.L)) / static_cast<double>(N);
    }
    std::size_t stride = 1;
    for (int i = coord + 1; i < g.n; ++i) stride *= static_cast<std::size_t>(N);
    const std::size_t outer = grid_total(coord, N);
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(N)));
    auto* line = reinterpret_cast<cplx*>(buf);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < stride; ++in) {
            const std::size_t base = o * stride * static_cast<std::size_t>(N) + in;
            for (int m = 0; m < N; ++m) line[m] = g.data[base + static_cast<std::size_t>(m) * stride];
            fftw_execute_dft(plans.fwd, buf, buf);
            for (int m = 0; m < N; ++m) line[m] *= mult[static_cast<std::size_t>(m)];
            fftw_execute_dft(plans.bwd, buf, buf);
            for (int m = 0; m < N; ++m) g.data[base + static_cast<std::size_t>(m) * stride] = line[m];
        }
    }
    fftw_free(buf);
}

}  // namespace modrop
