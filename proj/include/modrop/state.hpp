#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "modrop/specfun.hpp"

namespace modrop {

inline constexpr int kMaxDim = 4;

/// A point of C^n written as offset + idx * h per coordinate, where h is the
/// lattice step of the evaluation context. Keeping the integer part separate
/// makes points reached through different convolution paths compare equal.
struct Point {
    int n = 0;
    std::array<cplx, kMaxDim> off{};
    std::array<std::int64_t, kMaxDim> idx{};

    [[nodiscard]] cplx coord(int i, double h) const { return off[i] + static_cast<double>(idx[i]) * h; }
    friend bool operator==(const Point&, const Point&) = default;
};

Point make_point(std::span<const cplx> x);

/// c * prod_i exp(alpha_i x_i^2 + beta_i x_i), Re(alpha_i) < 0.
struct GaussTerm {
    cplx scale{1.0, 0.0};
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
};

class Node;
using State = std::shared_ptr<const Node>;

/// Per-evaluation scratch: lattice step, memo tables and a cache of
/// D-function values. Not shared between threads.
class EvalContext {
public:
    explicit EvalContext(double h, bool memoize = true) : h_(h), memoize_(memoize) {}

    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] bool memoize() const noexcept { return memoize_; }

    cplx eval(const Node& node, const Point& p);
    cplx cached_D(const GammaEvaluator& g, cplx a, cplx z);
    [[nodiscard]] std::size_t memo_size() const noexcept { return memo_.size(); }
    void clear() { memo_.clear(); dcache_.clear(); }

private:
    struct Key {
        const Node* node;
        Point p;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    struct DKey {
        const GammaEvaluator* g;
        cplx a;
        cplx z;
        bool operator==(const DKey& o) const noexcept;
    };
    struct DKeyHash {
        std::size_t operator()(const DKey& k) const noexcept;
    };

    double h_;
    bool memoize_;
    std::unordered_map<Key, cplx, KeyHash> memo_;
    std::unordered_map<DKey, cplx, DKeyHash> dcache_;
};

/// Node of the lazy expression tree. Trees are immutable and may be shared.
class Node {
public:
    explicit Node(int dims) : dims_(dims) {}
    virtual ~Node() = default;
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    [[nodiscard]] int dims() const noexcept { return dims_; }
    /// Number of nested kernel convolutions acting on each coordinate.
    [[nodiscard]] const std::array<int, kMaxDim>& conv_depth() const noexcept { return depth_; }
    /// Nodes that are expensive to evaluate are memoized by the context.
    [[nodiscard]] virtual bool memoizable() const noexcept { return false; }
    virtual cplx compute(const Point& p, EvalContext& ctx) const = 0;
    [[nodiscard]] virtual std::string kind() const = 0;
    /// Closed Gaussian form of the subtree, when it has one.
    [[nodiscard]] virtual std::optional<std::vector<GaussTerm>> gaussian_form() const { return std::nullopt; }

protected:
    std::array<int, kMaxDim> depth_{};

private:
    int dims_;
};

// ---- leaves and structural nodes -------------------------------------------

State make_gaussian(std::vector<cplx> alphas, std::vector<cplx> betas, cplx scale = 1.0);
State make_gaussian(const GaussTerm& term);
/// Single leaf holding a sum of Gaussian terms; terms with identical
/// exponents are merged.
State make_gaussian_sum(const std::vector<GaussTerm>& terms, int dims);
/// Replaces a Gaussian-closed tree by one Gaussian-sum leaf; other trees are
/// returned unchanged.
State collapse_gaussian(const State& s);
State make_zero(int dims);
State scale_state(cplx c, State s);
State sum_states(std::vector<State> parts);
/// Evaluates the child at x_coord + a.
State shift_state(int coord, cplx a, State s);
State permute_state(int i, int j, State s);
/// Multiplies by exp(c0 + sum_i c_i x_i).
State exp_linear_mul(cplx c0, std::vector<cplx> coeffs, State s);
/// Multiplies by D_a(sum_i c_i x_i + d).
State d_mul(std::shared_ptr<const GammaEvaluator> g, cplx a, std::vector<cplx> coeffs, cplx d, State s);
/// Multiplies by an arbitrary pointwise function of the coordinates.
using PointFunction = std::function<cplx(std::span<const cplx>)>;
State func_mul(PointFunction f, std::string name, State s);
/// Contour placement for kernel convolutions. lift <= 0 selects
/// numerics().kernel_lift; midpoint puts the nodes at (j + 1/2) h.
struct KernelOptions {
    double lift = 0.0;
    bool midpoint = false;
};

/// Applies D_a(p_coord) through its integral kernel.
State kernel_conv(std::shared_ptr<const GammaEvaluator> g, int coord, cplx a, State s, KernelOptions opts = {});

/// Expands a tree built from Gaussian leaves, shifts, linear exponentials,
/// permutations, scalings and sums into a list of Gaussian terms. Returns
/// nullopt for any other node kind.
std::optional<std::vector<GaussTerm>> gaussian_terms(const State& s);

inline constexpr int kMaxConvDepth = 3;

/// Evaluates s at a point. Throws DomainError if a coordinate carries more
/// than kMaxConvDepth nested kernel convolutions.
cplx eval_state(const State& s, std::span<const cplx> x, EvalContext& ctx);
cplx eval_state(const State& s, const Point& p, EvalContext& ctx);

// ---- grids -------------------------------------------------------------------

/// Samples on the uniform tensor grid x_j = -L + j*2L/N, j = 0..N-1, row-major
/// with coordinate 0 varying slowest.
struct GridData {
    int n = 1;
    double L = 4.0;
    int N = 256;
    std::vector<cplx> data;

    [[nodiscard]] double spacing() const noexcept { return 2.0 * L / N; }
    [[nodiscard]] double x(int j) const noexcept { return -L + j * spacing(); }
    [[nodiscard]] std::size_t size() const noexcept { return data.size(); }
    [[nodiscard]] bool compatible(const GridData& o) const noexcept { return n == o.n && L == o.L && N == o.N; }
};

GridData make_grid(int n, double L, int N);
GridData to_grid(const State& s, int n, double L, int N, EvalContext& ctx);
/// ||a - b|| / max(||a||, ||b||) over the grid samples.
double state_distance(const GridData& a, const GridData& b);

void write_grid_binary(const GridData& g, const std::string& path);
GridData read_grid_binary(const std::string& path);
void write_grid_csv(const GridData& g, const std::string& path);

}  // namespace modrop
