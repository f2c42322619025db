#include "modrop/measure.hpp"

#include <algorithm>
#include <cmath>

namespace modrop {

namespace {

const std::array<std::pair<cplx, cplx>, 3> kPanel{{
    {cplx{-kPi, 0.0}, cplx{0.0, 0.0}},
    {cplx{-2.0, 0.0}, cplx{0.3, 0.1}},
    {cplx{-1.5, 0.0}, cplx{-0.4, 0.0}},
}};

}  // namespace

std::vector<State> test_panel(int dims) {
    std::vector<State> out;
    for (int k = 0; k < 3; ++k) {
        std::vector<cplx> al;
        std::vector<cplx> be;
        for (int i = 0; i < dims; ++i) {
            al.push_back(kPanel[static_cast<std::size_t>((k + i) % 3)].first);
            be.push_back(kPanel[static_cast<std::size_t>((k + i) % 3)].second);
        }
        out.push_back(make_gaussian(al, be));
    }
    return out;
}

double state_residual(const State& a, const State& b, const SamplingSpec& spec, double h) {
    EvalContext ctx(h);
    const GridData ga = to_grid(a, a->dims(), spec.L, spec.N, ctx);
    const GridData gb = to_grid(b, b->dims(), spec.L, spec.N, ctx);
    return state_distance(ga, gb);
}

double operator_residual(const FDOperator& lhs, const FDOperator& rhs, const std::vector<State>& panel,
                         const SamplingSpec& spec, double h) {
    double worst = 0.0;
    for (const auto& phi : panel) {
        worst = std::max(worst, state_residual(lhs.apply(phi), rhs.apply(phi), spec, h));
    }
    return worst;
}

double matrix_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs, const std::vector<State>& panel,
                       const SamplingSpec& spec, double h) {
    double worst = 0.0;
    for (const auto& phi : panel) {
        double diff = 0.0;
        double na = 0.0;
        double nb = 0.0;
        for (int k = 0; k < 4; ++k) {
            EvalContext ctx(h);
            const GridData a = to_grid(lhs.e[k].apply(phi), phi->dims(), spec.L, spec.N, ctx);
            const GridData b = to_grid(rhs.e[k].apply(phi), phi->dims(), spec.L, spec.N, ctx);
            for (std::size_t m = 0; m < a.data.size(); ++m) {
                diff += std::norm(a.data[m] - b.data[m]);
                na += std::norm(a.data[m]);
                nb += std::norm(b.data[m]);
            }
        }
        const double den = std::sqrt(std::max(na, nb));
        if (den > 0.0) worst = std::max(worst, std::sqrt(diff) / den);
    }
    return worst;
}

std::vector<State> probe_panel(int dims, int count, double extent, double sigma) {
    std::vector<State> out;
    std::size_t total = 1;
    for (int i = 0; i < dims; ++i) total *= static_cast<std::size_t>(count);
    const double al = -1.0 / (2.0 * sigma * sigma);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        std::vector<cplx> alpha(static_cast<std::size_t>(dims), al);
        std::vector<cplx> beta(static_cast<std::size_t>(dims));
        cplx scale{1.0, 0.0};
        for (int i = dims - 1; i >= 0; --i) {
            const auto j = static_cast<double>(rem % static_cast<std::size_t>(count));
            rem /= static_cast<std::size_t>(count);
            const double c = count == 1 ? 0.0 : -extent + 2.0 * extent * j / (count - 1);
            beta[static_cast<std::size_t>(i)] = -2.0 * al * c;
            scale *= std::exp(al * c * c);
        }
        out.push_back(make_gaussian(GaussTerm{scale, alpha, beta}));
    }
    return out;
}

std::vector<cplx> weak_pairings(const FDOperator& A, const GridData& phi, const std::vector<State>& probes,
                                double h) {
    const FDOperator At = A.transpose();
    const double w = std::pow(phi.spacing(), phi.n);
    std::vector<cplx> out;
    out.reserve(probes.size());
    for (const auto& psi : probes) {
        EvalContext ctx(h);
        const GridData g = to_grid(At.apply(psi), phi.n, phi.L, phi.N, ctx);
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < g.data.size(); ++k) acc += g.data[k] * phi.data[k];
        out.push_back(w * acc);
    }
    return out;
}

double vector_residual(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw ShapeError("vector_residual: size mismatch");
    double d = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d += std::norm(a[k] - b[k]);
        na += std::norm(a[k]);
        nb += std::norm(b[k]);
    }
    const double den = std::sqrt(std::max(na, nb));
    return den == 0.0 ? 0.0 : std::sqrt(d) / den;
}

}  // namespace modrop
