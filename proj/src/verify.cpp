#include "modrop/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "modrop/lax.hpp"
#include "modrop/measure.hpp"
#include "modrop/modouble.hpp"
#include "modrop/rop.hpp"
#include "modrop/sl2c.hpp"

#ifndef MODROP_VERSION
#define MODROP_VERSION "0.0.0"
#endif

namespace modrop {

std::string version() { return MODROP_VERSION; }

// ---- complex literals --------------------------------------------------------

namespace {

double parse_real(std::string_view s, const std::string& whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (s.empty() || r.ec != std::errc{} || r.ptr != end || !std::isfinite(v)) {
        throw DomainError("invalid complex literal '" + whole + "' (expected re+imi, e.g. 0.3-0.1i)");
    }
    return v;
}

std::string shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (c != ' ') s += c;
    }
    if (s.empty()) throw DomainError("invalid complex literal '' (expected re+imi)");
    if (s.back() != 'i') return {parse_real(s, text), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

std::string format_complex(cplx z) {
    if (z.imag() == 0.0) return shortest(z.real());
    std::string out = z.real() == 0.0 ? "" : shortest(z.real());
    std::string im = shortest(z.imag());
    if (!out.empty() && im.front() != '-') im = "+" + im;
    return out + im + "i";
}

// ---- configuration --------------------------------------------------------------

NumericsConfig RunConfig::numerics() const {
    NumericsConfig n;
    n.quad_tol = quad_tol;
    n.contour_lift = contour_lift;
    n.truncation = truncation;
    return n;
}

void RunConfig::validate() const {
    const auto p = make_params(b);
    numerics().validate(p);
    if (!(grid_L > 0.0) || !std::isfinite(grid_L)) throw DomainError("config: grid L must be positive");
    if (grid_N < 4 || grid_N % 2 != 0) throw DomainError("config: grid N must be an even number of at least 4");
    if (suite != "fast" && suite != "full" && suite != "slow") {
        throw DomainError("config: suite must be fast, full or slow (got '" + suite + "')");
    }
    if (jobs < 1) throw DomainError("config: jobs must be at least 1");
    for (const auto& id : relations) {
        if (!is_relation(id)) {
            std::string list;
            for (const auto& v : relation_ids()) list += (list.empty() ? "" : ", ") + v;
            throw DomainError("config: unknown relation '" + id + "'; valid ids: " + list);
        }
    }
}

nlohmann::json to_json(const RunConfig& c) {
    return {
        {"b", c.b},
        {"spins", {{"s", format_complex(c.s)}, {"s1", format_complex(c.s1)}, {"s2", format_complex(c.s2)},
                   {"s3", format_complex(c.s3)}}},
        {"spectral", {{"u", format_complex(c.u)}, {"v", format_complex(c.v)}}},
        {"grid", {{"L", c.grid_L}, {"N", c.grid_N}}},
        {"quad", {{"tol", c.quad_tol}, {"lift", c.contour_lift}, {"T", c.truncation}}},
        {"suite", c.suite},
        {"relations", c.relations},
        {"output", {{"report", c.report_path}, {"csv", c.csv_path}}},
        {"seed", c.seed},
        {"jobs", c.jobs},
    };
}

namespace {

cplx json_complex(const nlohmann::json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw DomainError("config: '" + key + "' must be a number or a complex literal string");
}

template <class F>
void each_key(const nlohmann::json& j, const std::string& where, F&& f) {
    if (!j.is_object()) throw DomainError("config: '" + where + "' must be an object");
    for (const auto& [k, v] : j.items()) {
        if (!f(k, v)) throw DomainError("config: unknown key '" + (where.empty() ? k : where + "." + k) + "'");
    }
}

}  // namespace

void apply_json(const nlohmann::json& j, RunConfig& c) {
    try {
        each_key(j, "", [&](const std::string& k, const nlohmann::json& v) {
            if (k == "b") {
                c.b = v.get<double>();
            } else if (k == "spins") {
                each_key(v, k, [&](const std::string& sk, const nlohmann::json& sv) {
                    if (sk == "s") c.s = json_complex(sv, sk);
                    else if (sk == "s1") c.s1 = json_complex(sv, sk);
                    else if (sk == "s2") c.s2 = json_complex(sv, sk);
                    else if (sk == "s3") c.s3 = json_complex(sv, sk);
                    else return false;
                    return true;
                });
            } else if (k == "spectral") {
                each_key(v, k, [&](const std::string& sk, const nlohmann::json& sv) {
                    if (sk == "u") c.u = json_complex(sv, sk);
                    else if (sk == "v") c.v = json_complex(sv, sk);
                    else return false;
                    return true;
                });
            } else if (k == "grid") {
                each_key(v, k, [&](const std::string& sk, const nlohmann::json& sv) {
                    if (sk == "L") c.grid_L = sv.get<double>();
                    else if (sk == "N") c.grid_N = sv.get<int>();
                    else return false;
                    return true;
                });
            } else if (k == "quad") {
                each_key(v, k, [&](const std::string& sk, const nlohmann::json& sv) {
                    if (sk == "tol") c.quad_tol = sv.get<double>();
                    else if (sk == "lift") c.contour_lift = sv.get<double>();
                    else if (sk == "T") c.truncation = sv.get<double>();
                    else return false;
                    return true;
                });
            } else if (k == "suite") {
                c.suite = v.get<std::string>();
            } else if (k == "relations") {
                c.relations = v.get<std::vector<std::string>>();
            } else if (k == "output") {
                each_key(v, k, [&](const std::string& sk, const nlohmann::json& sv) {
                    if (sk == "report") c.report_path = sv.get<std::string>();
                    else if (sk == "csv") c.csv_path = sv.get<std::string>();
                    else return false;
                    return true;
                });
            } else if (k == "seed") {
                c.seed = v.get<std::uint64_t>();
            } else if (k == "jobs") {
                c.jobs = v.get<int>();
            } else {
                return false;
            }
            return true;
        });
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
}

nlohmann::json to_json(const RelationReport& r) {
    nlohmann::json j = {
        {"relation_id", r.relation_id}, {"params", r.params},   {"grid", r.grid},
        {"residual", r.residual},       {"tolerance", r.tolerance}, {"pass", r.pass},
        {"wall_time_ms", r.wall_time_ms}, {"anchor", r.anchor}, {"skipped", r.skipped},
    };
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

RelationReport report_from_json(const nlohmann::json& j) {
    RelationReport r;
    r.relation_id = j.at("relation_id").get<std::string>();
    r.params = j.value("params", nlohmann::json::object());
    r.grid = j.value("grid", "");
    r.residual = j.at("residual").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.wall_time_ms = j.value("wall_time_ms", 0.0);
    r.anchor = j.value("anchor", "");
    r.skipped = j.value("skipped", false);
    r.reason = j.value("reason", "");
    r.error = j.value("error", "");
    return r;
}

// ---- checks -------------------------------------------------------------------------

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kStep = 1.0 / 16.0;
constexpr double kFloor = 1e-12;
constexpr double kExact = 1e-10;

struct Env {
    const RunConfig& cfg;
    ModularParams p;
    NumericsConfig num;
    std::shared_ptr<const GammaEvaluator> g;
    SamplingSpec spec;

    explicit Env(const RunConfig& c)
        : cfg(c),
          p(make_params(c.b)),
          num(c.numerics()),
          g(std::make_shared<const GammaEvaluator>(p, num)),
          spec{c.grid_L, c.grid_N} {}

    double tol(ToleranceClass k) const { return num.tol(k); }
};

struct Outcome {
    double residual = 0.0;
    double tolerance = 0.0;
    json params = json::object();
    std::string grid;
};

using CheckFn = Outcome (*)(const Env&);

double rel(cplx a, cplx b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

std::string c2s(cplx z) { return format_complex(z); }

std::string grid_text(double L, int N, int dims) {
    std::ostringstream o;
    o << dims << "d box [-" << L << "," << L << "] N=" << N << " h=" << kStep;
    return o.str();
}

/// Growth of a sweep that should decrease: the largest ratio of consecutive
/// values, or final/limit_tol when the last value misses the limit. Steps
/// that land below the round-off floor count as converged.
double sweep_residual(const std::vector<double>& r, double limit_tol) {
    double worst = 0.0;
    for (std::size_t k = 1; k < r.size(); ++k) {
        if (r[k] > kFloor) worst = std::max(worst, r[k] / std::max(r[k - 1], kFloor));
    }
    return std::max(worst, r.back() / limit_tol);
}

std::vector<cplx> strip_lattice(const ModularParams& p) {
    std::vector<cplx> z;
    for (int k = 0; k < 20; ++k) {
        z.emplace_back(-1.95 + 0.205 * k, 0.35 * p.im_omega_pp() * std::cos(1.3 * k));
    }
    return z;
}

// Trapezoid sum of the defining integral on its own contour Im t = 1.2, with
// no reflection and no strip reduction.
cplx gamma_oracle(const ModularParams& p, cplx z) {
    const double delta = 1.2;
    const double step = 0.05;
    const double rate = p.im_omega() + p.im_omega_p() - std::abs(z.imag());
    const auto n = static_cast<long>(std::ceil((40.0 / rate + 5.0) / step));
    cplx sum = 0.0;
    for (long k = -n; k <= n; ++k) {
        const cplx t{static_cast<double>(k) * step, delta};
        sum += std::exp(kI * t * z) / (t * std::sin(p.omega * t) * std::sin(p.omega_p * t));
    }
    return std::exp(-0.25 * step * sum);
}

Outcome gamma_quadrature(const Env& e) {
    double worst = 0.0;
    for (cplx z : strip_lattice(e.p)) worst = std::max(worst, rel(e.g->gamma(z), gamma_oracle(e.p, z)));
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"points", 20}}, "contour Im t = 1.2, step 0.05"};
}

Outcome gamma_diff(const Env& e) {
    const auto& p = e.p;
    double worst = 0.0;
    for (cplx z : strip_lattice(p)) {
        worst = std::max(worst, rel(e.g->gamma(z + p.omega_p) / e.g->gamma(z - p.omega_p),
                                    1.0 + std::exp(-kI * kPi * z / p.omega)));
        worst = std::max(worst, rel(e.g->gamma(z + p.omega) / e.g->gamma(z - p.omega),
                                    1.0 + std::exp(-kI * kPi * z / p.omega_p)));
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"points", 20}}, "strip lattice"};
}

Outcome gamma_refl(const Env& e) {
    const auto& p = e.p;
    double worst = 0.0;
    for (cplx z : strip_lattice(p)) {
        worst = std::max(worst, rel(e.g->gamma(z) * e.g->gamma(-z),
                                    std::exp(kI * p.beta) * std::exp(kI * kPi * z * z)));
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"points", 20}}, "strip lattice"};
}

Outcome gamma_swap(const Env& e) {
    const GammaEvaluator gs(swap_omegas(e.p), e.num);
    double worst = 0.0;
    for (cplx z : strip_lattice(e.p)) worst = std::max(worst, rel(e.g->gamma(z), gs.gamma(z)));
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"points", 20}}, "strip lattice"};
}

const cplx kDIndices[] = {{0.13, -0.07}, {0.37, 0.0}, {-0.21, 0.04}};

std::vector<cplx> real_lattice() {
    std::vector<cplx> z;
    for (int k = 0; k < 20; ++k) z.emplace_back(-1.9 + 0.2 * k, 0.0);
    return z;
}

Outcome d_even(const Env& e) {
    double worst = 0.0;
    for (cplx a : kDIndices) {
        for (cplx z : real_lattice()) worst = std::max(worst, rel(e.g->D(a, z), e.g->D(a, -z)));
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"indices", 3}, {"points", 20}}, "real lattice"};
}

Outcome d_inverse(const Env& e) {
    double worst = 0.0;
    for (cplx a : kDIndices) {
        for (cplx z : real_lattice()) worst = std::max(worst, rel(e.g->D(a, z) * e.g->D(-a, z), 1.0));
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"indices", 3}, {"points", 20}}, "real lattice"};
}

Outcome d_diff(const Env& e) {
    const auto& p = e.p;
    double worst = 0.0;
    for (cplx a : kDIndices) {
        for (cplx z : real_lattice()) {
            for (const auto& [w, wo] : {std::pair{p.omega_p, p.omega}, std::pair{p.omega, p.omega_p}}) {
                const cplx lhs = e.g->D(a, z + w) / e.g->D(a, z - w);
                const cplx rhs = std::exp(-4.0 * kPi * kI * a * w) * (1.0 + std::exp(-kI * kPi * (z + a) / wo)) /
                                 (1.0 + std::exp(-kI * kPi * (z - a) / wo));
                worst = std::max(worst, rel(lhs, rhs));
            }
        }
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"b", e.cfg.b}, {"indices", 3}, {"points", 20}}, "real lattice"};
}

const std::pair<cplx, cplx> kFourierSamples[] = {
    {{0.3, -0.5}, {0.2, 0.0}},   {{-0.2, -0.3}, {-0.7, 0.1}}, {{0.1, -0.8}, {1.1, -0.05}},
    {{0.0, -0.4}, {0.45, 0.0}},  {{0.25, -0.6}, {-0.3, 0.0}},
};

double fourier_residual(const Env& e, cplx a, cplx z, double T) {
    return rel(e.g->fourier_D(a, z, T), e.g->D(-e.p.omega_pp - a, z));
}

Outcome fourier_d(const Env& e) {
    double worst = 0.0;
    for (const auto& [a, z] : kFourierSamples) worst = std::max(worst, fourier_residual(e, a, z, e.cfg.truncation));
    std::ostringstream grid;
    grid << "trapezoid T=" << e.cfg.truncation;
    return {worst, e.tol(ToleranceClass::OneCoord), {{"b", e.cfg.b}, {"samples", 5}}, grid.str()};
}

Outcome star_triangle_integral(const Env& e) {
    const cplx w = e.p.omega_pp;
    const std::pair<cplx, cplx> ab[] = {
        {{0.1, -0.6}, {-0.2, -0.7}}, {{0.3, -0.5}, {0.0, -0.8}}, {{-0.25, -0.65}, {0.15, -0.6}}};
    const std::array<double, 3> zs[] = {{0.3, -0.4, 0.1}, {0.0, 0.5, -0.2}};
    const double h = 0.01;
    const double T = 12.0;
    const auto n = static_cast<long>(std::lround(T / h));
    double worst = 0.0;
    for (const auto& [a, b] : ab) {
        const cplx c = -2.0 * w - a - b;
        for (const auto& z : zs) {
            cplx sum = 0.0;
            for (long k = -n; k <= n; ++k) {
                const double x = static_cast<double>(k) * h;
                sum += e.g->D(a, x - z[0]) * e.g->D(b, x - z[1]) * e.g->D(c, x - z[2]);
            }
            const cplx lhs = e.g->A(a) * e.g->A(b) * e.g->A(c) * h * sum;
            const cplx rhs =
                e.g->D(-w - a, z[1] - z[2]) * e.g->D(-w - b, z[2] - z[0]) * e.g->D(-w - c, z[0] - z[1]);
            worst = std::max(worst, rel(lhs, rhs));
        }
    }
    return {worst, e.tol(ToleranceClass::OneCoord), {{"b", e.cfg.b}, {"triples", 3}, {"points", 2}},
            "trapezoid h=0.01 T=12"};
}

// ---- modular double ---------------------------------------------------------------------

double op_res(const Env& e, const FDOperator& a, const FDOperator& b, int dims) {
    return operator_residual(a, b, test_panel(dims), e.spec, kStep);
}

double qsl2_residual(const Env& e, const Generators& G, cplx q) {
    const auto I = FDOperator::identity(1);
    const cplx qq = q - 1.0 / q;
    return std::max({op_res(e, G.K * G.E, q * (G.E * G.K), 1), op_res(e, G.K * G.F, (1.0 / q) * (G.F * G.K), 1),
                     op_res(e, G.E * G.F - G.F * G.E, (1.0 / qq) * (G.K * G.K - G.Kinv * G.Kinv), 1),
                     op_res(e, G.K * G.Kinv, I, 1)});
}

Outcome qsl2(const Env& e) {
    const SpinParams sp{e.cfg.s, e.p};
    return {qsl2_residual(e, generators(sp), e.p.q), e.tol(ToleranceClass::Scalar), {{"s", c2s(e.cfg.s)}},
            grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome qsl2_tilde(const Env& e) {
    const SpinParams sp{e.cfg.s, e.p};
    return {qsl2_residual(e, tilde_generators(sp), e.p.q_tilde), e.tol(ToleranceClass::Scalar),
            {{"s", c2s(e.cfg.s)}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome qsl2_cross(const Env& e) {
    const SpinParams sp{e.cfg.s, e.p};
    const auto G = generators(sp);
    const auto T = tilde_generators(sp);
    const cplx m{-1.0, 0.0};
    const double r = std::max({
        op_res(e, G.K * T.K, T.K * G.K, 1),
        op_res(e, G.K * T.E, m * (T.E * G.K), 1),
        op_res(e, G.K * T.F, m * (T.F * G.K), 1),
        op_res(e, T.K * G.E, m * (G.E * T.K), 1),
        op_res(e, T.K * G.F, m * (G.F * T.K), 1),
        op_res(e, G.E * T.E, T.E * G.E, 1),
        op_res(e, G.E * T.F, T.F * G.E, 1),
        op_res(e, G.F * T.E, T.E * G.F, 1),
        op_res(e, G.F * T.F, T.F * G.F, 1),
    });
    return {r, e.tol(ToleranceClass::Scalar), {{"s", c2s(e.cfg.s)}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome casimirs(const Env& e) {
    const auto I = FDOperator::identity(1);
    const auto ps = swap_omegas(e.p);
    double worst = 0.0;
    for (cplx s : {cplx{0.0}, cplx{0.4}, cplx{-0.4}}) {
        for (const auto& pp : {e.p, ps}) {
            const SpinParams sp{s, pp};
            worst = std::max(worst, op_res(e, casimir(sp), casimir_eigenvalue(sp) * I, 1));
        }
    }
    return {worst, e.tol(ToleranceClass::Scalar), {{"s", {"0", "0.4", "-0.4"}}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome intertwiner(const Env& e) {
    const cplx s = e.cfg.s;
    const auto W = intertwiner_W(e.g, s);
    const auto G = generators({s, e.p});
    const auto Gm = generators({-s, e.p});
    const auto T = tilde_generators({s, e.p});
    const auto Tm = tilde_generators({-s, e.p});
    const double r = std::max({
        op_res(e, W * G.K, Gm.K * W, 1), op_res(e, W * G.E, Gm.E * W, 1), op_res(e, W * G.F, Gm.F * W, 1),
        op_res(e, W * T.K, Tm.K * W, 1), op_res(e, W * T.E, Tm.E * W, 1), op_res(e, W * T.F, Tm.F * W, 1),
    });
    return {r, e.tol(ToleranceClass::OneCoord), {{"s", c2s(s)}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome intertwiner_backends(const Env& e) {
    const auto W = intertwiner_W(e.g, e.cfg.s);
    double worst = 0.0;
    for (const auto& phi : test_panel(1)) {
        EvalContext ctx(kStep);
        const GridData kernel = to_grid(W.apply(phi), 1, e.spec.L, e.spec.N, ctx);
        const GridData spectral = W.apply(to_grid(phi, 1, e.spec.L, e.spec.N, ctx));
        worst = std::max(worst, state_distance(kernel, spectral));
    }
    return {worst, e.tol(ToleranceClass::OneCoord), {{"s", c2s(e.cfg.s)}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome star_triangle_op(const Env& e) {
    const cplx a = 0.15;
    const cplx b = -0.25;
    const auto& g = e.g;
    const auto lhs = d_of_p(g, 1, 0, a) * d_of_x(g, 1, a + b, {1.0}) * d_of_p(g, 1, 0, b);
    const auto rhs = d_of_x(g, 1, b, {1.0}) * d_of_p(g, 1, 0, a + b) * d_of_x(g, 1, a, {1.0});
    return {op_res(e, lhs, rhs, 1), e.tol(ToleranceClass::TwoCoord), {{"a", c2s(a)}, {"b", c2s(b)}},
            grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome wsw(const Env& e, int coord) {
    const cplx a = 0.15;
    const cplx b = -0.25;
    const auto& g = e.g;
    auto Dx = [&](cplx c) { return d_of_x(g, 2, c, {1.0, -1.0}); };
    auto Dp = [&](cplx c) { return d_of_p(g, 2, coord, c); };
    return {op_res(e, Dp(a) * Dx(a + b) * Dp(b), Dx(b) * Dp(a + b) * Dx(a), 2), e.tol(ToleranceClass::TwoCoord),
            {{"a", c2s(a)}, {"b", c2s(b)}}, grid_text(e.spec.L, e.spec.N, 2)};
}

Outcome wsw1(const Env& e) { return wsw(e, 0); }
Outcome wsw2(const Env& e) { return wsw(e, 1); }

// ---- L-operators ----------------------------------------------------------------------------

double mat_res(const Env& e, const OperatorMatrix& a, const OperatorMatrix& b, int dims) {
    return matrix_residual(a, b, test_panel(dims), e.spec, kStep);
}

json lax_params(const Env& e) { return {{"u", c2s(e.cfg.u)}, {"s", c2s(e.cfg.s)}}; }

Outcome l_factorized(const Env& e) {
    const auto [u1, u2] = spin_to_u(e.p, e.cfg.u, e.cfg.s);
    return {mat_res(e, build_L12(e.p, u1, u2), build_L_factorized(e.p, u1, u2), 1), kExact, lax_params(e),
            grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome nm_identity(const Env& e) {
    const cplx u = e.cfg.u;
    const cplx U = std::exp(kI * kPi * u / (2.0 * e.p.omega));
    const auto I = FDOperator::identity(1);
    const auto sigma3 = OperatorMatrix::diag(I, cplx{-1.0, 0.0} * I);
    return {mat_res(e, build_N(e.p, u) * sigma3 * build_M(e.p, u), (1.0 / (U * U) - U * U) * OperatorMatrix::identity(1), 1),
            kExact, {{"u", c2s(u)}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome wl2(const Env& e) {
    const auto [u1, u2] = spin_to_u(e.p, e.cfg.u, e.cfg.s);
    const auto D = d_of_p(e.g, 1, 0, u2 - u1);
    return {mat_res(e, D * build_L12(e.p, u1, u2), build_L12(e.p, u2, u1) * D, 1), e.tol(ToleranceClass::TwoCoord),
            lax_params(e), grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome lplus_to_lminus(const Env& e) {
    const cplx u = e.cfg.u;
    const auto lhs = fresnel(1, 0, 1) * build_Lplus(e.p, u) * fresnel(1, 0, -1);
    return {mat_res(e, lhs, build_Lminus(e.p, u), 1), e.tol(ToleranceClass::Scalar), {{"u", c2s(u)}},
            grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome lpm_limit(const Env& e) {
    const cplx u1 = e.cfg.u;
    std::vector<double> r;
    json values = json::array();
    for (double u2 : {2.0, 4.0, 8.0}) {
        const cplx pre = std::exp(-kI * kPi * u2 / (2.0 * e.p.omega));
        const double rp = mat_res(e, pre * build_L12(e.p, u1, u2), build_Lplus(e.p, u1), 1);
        const double rm = mat_res(e, pre * build_L12(e.p, u2, u1), build_Lminus(e.p, u1), 1);
        r.push_back(std::max(rp, rm));
        values.push_back(r.back());
    }
    return {sweep_residual(r, e.tol(ToleranceClass::OneCoord)), 1.0,
            {{"u1", c2s(u1)}, {"u2", {2, 4, 8}}, {"sweep", values}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome ell_limit(const Env& e) {
    const cplx u = e.cfg.u;
    const cplx s = e.cfg.s;
    const auto ell = build_ell(e.p, u, s);
    const auto ellbar = build_ellbar(e.p, u, s);
    std::vector<double> r;
    json values = json::array();
    for (double w : {1.0, 2.0, 4.0}) {
        const cplx pre = std::exp(-kI * kPi * w / e.p.omega);
        const auto a = pre * (op_shift(1, 0, w) * build_L(e.p, u + w, s) * op_shift(1, 0, -w));
        const auto b = -pre * (op_shift(1, 0, -w) * build_L(e.p, u - w, s) * op_shift(1, 0, w));
        r.push_back(std::max(mat_res(e, a, ell, 1), mat_res(e, b, ellbar, 1)));
        values.push_back(r.back());
    }
    return {sweep_residual(r, e.tol(ToleranceClass::OneCoord)), 1.0,
            {{"u", c2s(u)}, {"s", c2s(s)}, {"w", {1, 2, 4}}, {"sweep", values}}, grid_text(e.spec.L, e.spec.N, 1)};
}

Outcome intw_lplus_lminus(const Env& e) {
    const cplx u = e.cfg.u;
    const cplx v = e.cfg.v;
    const auto D = d_of_x(e.g, 2, v - u, {1.0, -1.0});
    const auto lhs = D * (build_Lplus(e.p, v, 2, 0) * build_Lminus(e.p, u, 2, 1));
    const auto rhs = (build_Lplus(e.p, u, 2, 0) * build_Lminus(e.p, v, 2, 1)) * D;
    return {mat_res(e, lhs, rhs, 2), e.tol(ToleranceClass::TwoCoord), {{"u", c2s(u)}, {"v", c2s(v)}},
            grid_text(e.spec.L, e.spec.N, 2)};
}

// ---- S- and R-operators ----------------------------------------------------------------------

json tuple_params(const RunConfig& c) {
    return {{"u", c2s(c.u)}, {"v", c2s(c.v)}, {"s1", c2s(c.s1)}, {"s2", c2s(c.s2)}};
}

SpectralTuple cfg_tuple(const Env& e) { return make_spectral_tuple(e.p, e.cfg.u, e.cfg.v, e.cfg.s1, e.cfg.s2); }

Outcome sll(const Env& e) {
    const auto t = cfg_tuple(e);
    const auto D = d_of_x(e.g, 2, t.u1 - t.v2, {1.0, -1.0});
    const auto lhs = D * (build_L12(e.p, t.u1, t.u2, 2, 0) * build_L12(e.p, t.v1, t.v2, 2, 1));
    const auto rhs = (build_L12(e.p, t.v2, t.u2, 2, 0) * build_L12(e.p, t.v1, t.u1, 2, 1)) * D;
    return {mat_res(e, lhs, rhs, 2), e.tol(ToleranceClass::TwoCoord), tuple_params(e.cfg),
            grid_text(e.spec.L, e.spec.N, 2)};
}

Outcome coxeter(const Env& e, int a, int b) {
    const auto t = cfg_tuple(e);
    auto S = [&](int k, const SpectralTuple& x) { return build_S(e.g, k, x); };
    const auto lhs = S(a, s_action(b, s_action(a, t))) * S(b, s_action(a, t)) * S(a, t);
    const auto rhs = S(b, s_action(a, s_action(b, t))) * S(a, s_action(b, t)) * S(b, t);
    return {op_res(e, lhs, rhs, 2), e.tol(ToleranceClass::TwoCoord), tuple_params(e.cfg),
            grid_text(e.spec.L, e.spec.N, 2)};
}

Outcome def1(const Env& e) { return coxeter(e, 1, 2); }
Outcome def3(const Env& e) { return coxeter(e, 2, 3); }

const std::vector<State>& weak_probes() {
    static const std::vector<State> probes = probe_panel(2, 5, 1.5, 0.35);
    return probes;
}

/// Weak-form residual of R A = B R: both sides are paired with the probe
/// lattice, B moved onto the probes. Entries are stacked per test state.
double weak_residual(const FDOperator& R, const OperatorMatrix& A, const OperatorMatrix& B,
                     const std::vector<State>& states, double L, int N, bool grid_only) {
    double worst = 0.0;
    auto apply_R = [&](const State& s, EvalContext& ctx) {
        return grid_only ? R.apply(to_grid(s, 2, L, N, ctx)) : to_grid(R.apply(s), 2, L, N, ctx);
    };
    for (const auto& phi : states) {
        EvalContext c0(kStep);
        const GridData Rphi = apply_R(phi, c0);
        std::vector<cplx> lhs;
        std::vector<cplx> rhs;
        for (int k = 0; k < 4; ++k) {
            if (A.e[k].is_zero() && B.e[k].is_zero()) continue;
            EvalContext c1(kStep);
            const GridData l = apply_R(A.e[k].apply(phi), c1);
            const auto pl = weak_pairings(FDOperator::identity(2), l, weak_probes(), kStep);
            const auto pr = weak_pairings(B.e[k], Rphi, weak_probes(), kStep);
            lhs.insert(lhs.end(), pl.begin(), pl.end());
            rhs.insert(rhs.end(), pr.begin(), pr.end());
        }
        worst = std::max(worst, vector_residual(lhs, rhs));
    }
    return worst;
}

constexpr std::array<double, 4> kSecondPoint = {0.1, 0.25, -0.3, 0.2};
// R phi is sampled with spacing 1/8; the probes average out the rest.
const SamplingSpec kWeakGrid{4.0, 64};

Outcome rll(const Env& e, bool tilde) {
    const auto& p = e.p;
    const auto pl = tilde ? swap_omegas(p) : p;
    auto one = [&](const SpectralTuple& t, std::vector<State> states) {
        const auto R = build_R(e.g, t);
        const auto A = build_L12(pl, t.u1, t.u2, 2, 0) * build_L12(pl, t.v1, t.v2, 2, 1);
        const auto B = build_L12(pl, t.v1, t.v2, 2, 0) * build_L12(pl, t.u1, t.u2, 2, 1);
        return weak_residual(R, A, B, states, kWeakGrid.L, kWeakGrid.N, false);
    };
    const auto panel = test_panel(2);
    const auto& q = kSecondPoint;
    const double r = std::max(one(cfg_tuple(e), panel),
                              one(make_spectral_tuple(p, q[0], q[1], q[2], q[3]), {panel[1]}));
    json params = tuple_params(e.cfg);
    params["second_point"] = {q[0], q[1], q[2], q[3]};
    return {r, e.tol(ToleranceClass::Composite), params,
            grid_text(kWeakGrid.L, kWeakGrid.N, 2) + ", weak form on 5x5 Gaussian probes"};
}

Outcome rll1(const Env& e) { return rll(e, false); }
Outcome rll2(const Env& e) { return rll(e, true); }

Outcome r_trivial(const Env& e) {
    const cplx s = e.cfg.s1;
    const auto I = FDOperator::identity(2);
    double worst = op_res(e, build_R_spin(e.g, 0.0, s, s), I, 2);
    for (const auto& phi : test_panel(2)) {
        worst = std::max(worst, state_residual(apply_R_integral(e.g, 0.0, s, s, phi), phi, e.spec, kStep));
    }
    return {worst, e.tol(ToleranceClass::TwoCoord), {{"u", "0"}, {"s1", c2s(s)}, {"s2", c2s(s)}},
            grid_text(e.spec.L, e.spec.N, 2)};
}

Outcome r_integral(const Env& e) {
    const SamplingSpec spec{4.0, 64};
    const auto panel = test_panel(2);
    const cplx s2 = 0.35;
    double worst = 0.0;
    std::size_t k = 0;
    for (double u : {-0.3, 0.1, 0.4}) {
        for (double s1 : {0.2, 0.5, 0.8}) {
            const auto& phi = panel[k++ % panel.size()];
            const State lhs = build_R_spin(e.g, u, s1, s2).apply(phi);
            const State rhs = apply_R_integral(e.g, u, s1, s2, phi);
            worst = std::max(worst, state_residual(lhs, rhs, spec, kStep));
        }
    }
    return {worst, e.tol(ToleranceClass::OneCoord),
            {{"u", {-0.3, 0.1, 0.4}}, {"s1", {0.2, 0.5, 0.8}}, {"s2", "0.35"}}, grid_text(spec.L, spec.N, 2)};
}

// ---- Yang-Baxter ------------------------------------------------------------------------------

constexpr double kYBBox = 3.5;

json yb_params(const RunConfig& c) {
    return {{"u", c2s(c.u)}, {"v", c2s(c.v)}, {"s1", c2s(c.s1)}, {"s2", c2s(c.s2)}, {"s3", c2s(c.s3)}};
}

double yb1_residual(const Env& e, int N) {
    const Sites a12{3, 0, 1};
    const Sites a13{3, 0, 2};
    const Sites a23{3, 1, 2};
    const auto& c = e.cfg;
    const auto R12 = build_RR(e.g, c.u - c.v, c.s1, c.s2, a12);
    const auto R13 = build_RR(e.g, c.u, c.s1, c.s3, a13);
    const auto R23 = build_RR(e.g, c.v, c.s2, c.s3, a23);
    const auto lhs = R12 * R13 * R23;
    const auto rhs = R23 * R13 * R12;
    double worst = 0.0;
    for (const auto& phi : test_panel(3)) {
        EvalContext ctx(kStep);
        const GridData G = to_grid(phi, 3, kYBBox, N, ctx);
        worst = std::max(worst, state_distance(lhs.apply(G), rhs.apply(G)));
    }
    return worst;
}

Outcome yb1_coarse(const Env& e) {
    return {yb1_residual(e, 32), e.tol(ToleranceClass::YangBaxterCoarse), yb_params(e.cfg), grid_text(kYBBox, 32, 3)};
}

Outcome yb1_fine(const Env& e) {
    return {yb1_residual(e, 64), e.tol(ToleranceClass::YangBaxterFine), yb_params(e.cfg), grid_text(kYBBox, 64, 3)};
}

// Narrow probes: the wide panel aliases the chirps of the universal factors at N = 64.
std::vector<State> narrow_probes() {
    const std::vector<std::vector<cplx>> betas = {
        {0.0, 0.2, -0.1}, {0.3, -0.2, 0.1}, {{0.1, 0.2}, 0.0, {-0.2, -0.1}}, {0.5, 0.5, -0.5}};
    std::vector<State> out;
    for (const auto& b : betas) out.push_back(make_gaussian({-4.0, -4.0, -4.0}, b));
    return out;
}

double three_site_residual(const FDOperator& lhs, const FDOperator& rhs, int N) {
    double worst = 0.0;
    for (const auto& phi : narrow_probes()) {
        EvalContext ctx(kStep);
        const GridData G = to_grid(phi, 3, kYBBox, N, ctx);
        worst = std::max(worst, state_distance(lhs.apply(G), rhs.apply(G)));
    }
    return worst;
}

// Larger spins steepen the chirps beyond what N = 64 resolves in this box.
constexpr std::array<double, 3> kYB0Spins = {0.2, 0.3, 0.1};

double yb0_residual(const Env& e, int N) {
    const Sites a12{3, 0, 1};
    const Sites a13{3, 0, 2};
    const Sites a23{3, 1, 2};
    const auto& s = kYB0Spins;
    const auto r12 = build_universal_R(e.g, s[0], s[1], a12);
    const auto r13 = build_universal_R(e.g, s[0], s[2], a13);
    const auto r23 = build_universal_R(e.g, s[1], s[2], a23);
    return three_site_residual(r23 * r13 * r12, r12 * r13 * r23, N);
}

Outcome yb0(const Env& e) {
    const json params = {{"s1", kYB0Spins[0]}, {"s2", kYB0Spins[1]}, {"s3", kYB0Spins[2]}};
    return {yb0_residual(e, 64), e.tol(ToleranceClass::YangBaxterFine), params,
            grid_text(kYBBox, 64, 3) + ", narrow Gaussian probes"};
}

Outcome rrr(const Env& e) {
    const Sites a12{3, 0, 1};
    const Sites a13{3, 0, 2};
    const Sites a23{3, 1, 2};
    const auto& c = e.cfg;
    const auto R23 = build_RR(e.g, c.v, c.s2, c.s3, a23);
    const auto r13 = yangbaxterize(build_universal_R(e.g, c.s1, c.s3, a13), c.u, a13);
    const auto r12 = yangbaxterize(build_universal_R(e.g, c.s1, c.s2, a12), c.u - c.v, a12);
    return {three_site_residual(R23 * r13 * r12, r12 * r13 * R23, 64), e.tol(ToleranceClass::YangBaxterFine),
            yb_params(e.cfg), grid_text(kYBBox, 64, 3) + ", narrow Gaussian probes"};
}

// ---- universal R ---------------------------------------------------------------------------------

double grid_residual(const FDOperator& a, const FDOperator& b, double L, int N) {
    double worst = 0.0;
    for (const auto& phi : test_panel(2)) {
        EvalContext ctx(kStep);
        const GridData G = to_grid(phi, 2, L, N, ctx);
        worst = std::max(worst, state_distance(a.apply(G), b.apply(G)));
    }
    return worst;
}

json universal_params(const RunConfig& c) { return {{"u", c2s(c.u)}, {"s1", c2s(c.s1)}, {"s2", c2s(c.s2)}}; }

Outcome reduction(const Env& e) {
    const auto& c = e.cfg;
    const double L = 8.0;
    const int N = 256;
    const auto target = yangbaxterize(build_universal_R(e.g, c.s1, c.s2), c.u);
    std::vector<double> r;
    json values = json::array();
    for (double v : {1.0, 2.0, 4.0}) {
        r.push_back(grid_residual(reduction_sequence(e.g, c.u, v, c.s1, c.s2), target, L, N));
        values.push_back(r.back());
    }
    json params = universal_params(c);
    params["v"] = {1, 2, 4};
    params["sweep"] = values;
    return {sweep_residual(r, e.tol(ToleranceClass::OneCoord)), 1.0, params, grid_text(L, N, 2)};
}

Outcome translation(const Env& e) {
    const double L = 6.0;
    const int N = 256;
    const auto R = build_universal_R(e.g, e.cfg.s1, e.cfg.s2);
    const auto T = op_shift(2, 0, 0.5) * op_shift(2, 1, 0.5);
    json params = universal_params(e.cfg);
    params.erase("u");
    params["shift"] = 0.5;
    return {grid_residual(R * T, T * R, L, N), e.tol(ToleranceClass::Scalar), params, grid_text(L, N, 2)};
}

Outcome universal_spectral(const Env& e) {
    const double L = 6.0;
    const int N = 256;
    const auto& c = e.cfg;
    const auto lhs = build_universal_R_u(e.g, c.u, c.s1, c.s2);
    const auto rhs = yangbaxterize(build_universal_R(e.g, c.s1, c.s2), c.u);
    return {grid_residual(lhs, rhs, L, N), e.tol(ToleranceClass::TwoCoord), universal_params(c), grid_text(L, N, 2)};
}

Outcome reduced_rll(const Env& e, bool bar) {
    const auto& c = e.cfg;
    const double L = 5.0;
    const int N = 256;
    const auto R = yangbaxterize(build_universal_R(e.g, c.s1, c.s2), c.u - c.v);
    OperatorMatrix A;
    OperatorMatrix B;
    if (!bar) {
        const auto l1 = build_ell(e.p, c.u, c.s1, 2, 0);
        const auto L2 = build_L(e.p, c.v, c.s2, 2, 1);
        A = l1 * L2;
        B = L2 * l1;
    } else {
        const auto L1 = build_L(e.p, c.u, c.s1, 2, 0);
        const auto lb2 = build_ellbar(e.p, c.v, c.s2, 2, 1);
        A = L1 * lb2;
        B = lb2 * L1;
    }
    return {weak_residual(R, A, B, test_panel(2), L, N, true), e.tol(ToleranceClass::Composite), tuple_params(c),
            grid_text(L, N, 2) + ", weak form on 5x5 Gaussian probes"};
}

Outcome rll_ell(const Env& e) { return reduced_rll(e, false); }
Outcome rll_ellbar(const Env& e) { return reduced_rll(e, true); }

// ---- exact holomorphic sector ---------------------------------------------------------------------

constexpr int kDegree = 4;
constexpr std::array<long long, 4> kTuples[] = {{3, 4, 1, 0}, {2, 2, 0, 0}};

Outcome exact(std::vector<sl2c::ExactResult> results, json params) {
    double nonzero = 0.0;
    std::size_t monos = 0;
    for (const auto& r : results) {
        nonzero += static_cast<double>(r.nonzero);
        monos += r.monomials;
    }
    params["monomials"] = monos;
    return {nonzero, 0.0, params, "exact rational, degree <= 4"};
}

Outcome sl2c_f1(const Env&) { return exact({sl2c::check_f1(2, 5, kDegree)}, {{"u", 2}, {"v", 5}}); }
Outcome sl2c_f2(const Env&) { return exact({sl2c::check_f2(2, 5, kDegree)}, {{"u", 2}, {"v", 5}}); }

Outcome sl2c_minus_plus(const Env&) {
    return exact({sl2c::check_intertwining(1, 3, sl2c::Pairing::MinusPlus, kDegree)}, {{"u", 1}, {"v", 3}});
}

Outcome sl2c_plus_minus(const Env&) {
    return exact({sl2c::check_intertwining(0, 2, sl2c::Pairing::PlusMinus, kDegree)}, {{"u", 0}, {"v", 2}});
}

Outcome sl2c_canonical(const Env&) { return exact({sl2c::check_canonical_pair(3, kDegree)}, {{"u", 3}}); }

json tuple_list() { return {{3, 4, 1, 0}, {2, 2, 0, 0}}; }

Outcome sl2c_four(const Env&) {
    std::vector<sl2c::ExactResult> rs;
    for (const auto& t : kTuples) {
        rs.push_back(sl2c::check_RLL_ab(t, kDegree));
        rs.push_back(sl2c::check_Rab_conjugation(t, kDegree));
    }
    return exact(rs, {{"tuples", tuple_list()}});
}

Outcome sl2c_rll(const Env&) {
    std::vector<sl2c::ExactResult> rs;
    for (const auto& t : kTuples) rs.push_back(sl2c::check_RLL(t, kDegree));
    return exact(rs, {{"tuples", tuple_list()}});
}

// ---- registry --------------------------------------------------------------------------------------

struct Entry {
    RelationInfo info;
    CheckFn fn;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"gamma-quadrature", "quantum dilogarithm against its defining contour integral", Tier::Fast}, gamma_quadrature},
        {{"gamma-diff", "difference equations of the quantum dilogarithm", Tier::Fast}, gamma_diff},
        {{"gamma-refl", "reflection formula of the quantum dilogarithm", Tier::Fast}, gamma_refl},
        {{"gamma-swap", "symmetry of the quantum dilogarithm under exchange of half-periods", Tier::Fast}, gamma_swap},
        {{"D-even", "evenness of the Faddeev-Volkov function", Tier::Fast}, d_even},
        {{"D-inverse", "inversion D_a D_-a = 1", Tier::Fast}, d_inverse},
        {{"D-diff", "difference equations of the Faddeev-Volkov function", Tier::Fast}, d_diff},
        {{"FourierD", "Fourier transform of the Faddeev-Volkov function", Tier::Fast}, fourier_d},
        {{"str-trg", "integral star-triangle relation", Tier::Fast}, star_triangle_integral},
        {{"qsl2", "defining relations of the quantum algebra", Tier::Fast}, qsl2},
        {{"qsl2-tilde", "defining relations of the dual quantum algebra", Tier::Fast}, qsl2_tilde},
        {{"qsl2-cross", "mutual (anti)commutation of the two algebras of the modular double", Tier::Fast}, qsl2_cross},
        {{"Casimir", "Casimir eigenvalue on the principal series", Tier::Fast}, casimirs},
        {{"intw1", "intertwiner between representations of opposite spin", Tier::Fast}, intertwiner},
        {{"intw-backend", "kernel and spectral realisations of D(p) agree", Tier::Fast}, intertwiner_backends},
        {{"star-triangle-op", "operator star-triangle relation", Tier::Fast}, star_triangle_op},
        {{"LFact", "factorised form of the L-operator", Tier::Fast}, l_factorized},
        {{"NM", "scalar product of the factor matrices", Tier::Fast}, nm_identity},
        {{"WL2", "spectral parameter exchange in the L-operator", Tier::Fast}, wl2},
        {{"L+toL-", "unitary equivalence of the reduced L-operators", Tier::Fast}, lplus_to_lminus},
        {{"L+-limit", "reduction of the L-operator to L+ and L-", Tier::Fast}, lpm_limit},
        {{"ell-limit", "reduction of the L-operator to its triangular forms", Tier::Fast}, ell_limit},
        {{"sl2c-f1", "holomorphic sector: first factorisation identity", Tier::Fast}, sl2c_f1},
        {{"sl2c-f2", "holomorphic sector: second factorisation identity", Tier::Fast}, sl2c_f2},
        {{"sl2c-L-L+", "holomorphic sector: intertwining of L- L+", Tier::Fast}, sl2c_minus_plus},
        {{"sl2c-L+L-", "holomorphic sector: intertwining of L+ L-", Tier::Fast}, sl2c_plus_minus},
        {{"sl2c-canonical", "holomorphic sector: canonical maps between L+ and L-", Tier::Fast}, sl2c_canonical},
        {{"sl2c-L-L+L-L+", "holomorphic sector: four-factor relation and its R-operator", Tier::Fast}, sl2c_four},
        {{"sl2c-RLL", "holomorphic sector: RLL relation for the R-operator", Tier::Fast}, sl2c_rll},
        {{"WSW1", "two-coordinate star-triangle relation on the first coordinate", Tier::Full}, wsw1},
        {{"WSW2", "two-coordinate star-triangle relation on the second coordinate", Tier::Full}, wsw2},
        {{"intwL+L-", "intertwining of L+ L- by D(x12)", Tier::Full}, intw_lplus_lminus},
        {{"SLL", "intertwining relation of the middle S-operator", Tier::Full}, sll},
        {{"def1", "braid relation of S1 and S2", Tier::Full}, def1},
        {{"def3", "braid relation of S2 and S3", Tier::Full}, def3},
        {{"R-trivial", "R-operator is the identity at coinciding parameters", Tier::Full}, r_trivial},
        {{"R-integral", "product and double-kernel forms of the R-operator", Tier::Full}, r_integral},
        {{"RLL1", "RLL relation for the R-operator", Tier::Full}, rll1},
        {{"RLL2", "RLL relation in the dual algebra", Tier::Full}, rll2},
        {{"YB1-coarse", "Yang-Baxter equation with spectral parameters, coarse grid", Tier::Full}, yb1_coarse},
        {{"red", "reduction of the R-operator to the universal R-matrix", Tier::Full}, reduction},
        {{"R-translation", "translation invariance of the universal R-matrix", Tier::Full}, translation},
        {{"rBaxt", "spectral form of the universal R-matrix", Tier::Full}, universal_spectral},
        {{"rlL", "RLL-type relation with the lower-triangular reduction", Tier::Full}, rll_ell},
        {{"rLl", "RLL-type relation with the upper-triangular reduction", Tier::Full}, rll_ellbar},
        {{"YB1", "Yang-Baxter equation with spectral parameters", Tier::Slow}, yb1_fine},
        {{"YB0", "Yang-Baxter equation without spectral parameters", Tier::Slow}, yb0},
        {{"Rrr", "mixed three-term relation of the R-operator and universal R-matrix", Tier::Slow}, rrr},
    };
    return list;
}

const Entry* find_entry(const std::string& id) {
    for (const auto& e : entries()) {
        if (e.info.id == id) return &e;
    }
    return nullptr;
}

std::string id_list() {
    std::string out;
    for (const auto& e : entries()) out += (out.empty() ? "" : ", ") + e.info.id;
    return out;
}

Tier parse_tier(const std::string& s) {
    if (s == "fast") return Tier::Fast;
    if (s == "full") return Tier::Full;
    if (s == "slow") return Tier::Slow;
    throw DomainError("unknown suite '" + s + "' (expected fast, full or slow)");
}

std::vector<RelationReport> run_ids(const std::vector<std::string>& ids, const RunConfig& cfg) {
    std::vector<RelationReport> out(ids.size());
    const int workers = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(ids.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < ids.size(); ++k) out[k] = run_relation(ids[k], cfg);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < ids.size(); k = next++) out[k] = run_relation(ids[k], cfg);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

const std::vector<RelationInfo>& registry() {
    static const std::vector<RelationInfo> infos = [] {
        std::vector<RelationInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::vector<std::string> relation_ids() {
    std::vector<std::string> ids;
    for (const auto& e : entries()) ids.push_back(e.info.id);
    return ids;
}

bool is_relation(const std::string& id) { return find_entry(id) != nullptr; }

RelationReport run_relation(const std::string& id, const RunConfig& cfg) {
    const Entry* entry = find_entry(id);
    if (entry == nullptr) throw DomainError("unknown relation '" + id + "'; valid ids: " + id_list());
    RelationReport r;
    r.relation_id = id;
    r.anchor = entry->info.anchor;
    const auto t0 = Clock::now();
    try {
        const Env env(cfg);
        const Outcome o = entry->fn(env);
        r.residual = o.residual;
        r.tolerance = o.tolerance;
        r.params = o.params;
        r.grid = o.grid;
        r.pass = std::isfinite(o.residual) && o.residual <= o.tolerance;
    } catch (const std::exception& ex) {
        r.residual = std::numeric_limits<double>::quiet_NaN();
        r.pass = false;
        r.error = ex.what();
    }
    r.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

std::vector<RelationReport> run_suite(const std::string& suite, const RunConfig& cfg) {
    const Tier tier = parse_tier(suite);
    std::vector<std::string> ids;
    std::vector<RelationReport> skipped;
    for (const auto& e : entries()) {
        if (static_cast<int>(e.info.tier) <= static_cast<int>(tier)) ids.push_back(e.info.id);
    }
    auto reports = run_ids(ids, cfg);
    for (const auto& e : entries()) {
        if (static_cast<int>(e.info.tier) > static_cast<int>(tier)) {
            RelationReport r;
            r.relation_id = e.info.id;
            r.anchor = e.info.anchor;
            r.skipped = true;
            r.reason = std::string("not in suite '") + suite + "'";
            r.residual = std::numeric_limits<double>::quiet_NaN();
            reports.push_back(r);
        }
    }
    return reports;
}

std::vector<RelationReport> run_relations(const std::vector<std::string>& ids, const RunConfig& cfg) {
    if (ids.empty()) throw DomainError("empty relation filter; valid ids: " + id_list());
    for (const auto& id : ids) {
        if (!is_relation(id)) throw DomainError("unknown relation '" + id + "'; valid ids: " + id_list());
    }
    std::vector<std::string> ordered;
    for (const auto& e : entries()) {
        if (std::find(ids.begin(), ids.end(), e.info.id) != ids.end()) ordered.push_back(e.info.id);
    }
    return run_ids(ordered, cfg);
}

// ---- convergence ---------------------------------------------------------------------------------------

std::vector<std::string> convergence_relations() { return {"YB1", "YB", "YB0", "FourierD"}; }

ConvergenceTable convergence_series(const std::string& relation_id, const std::vector<double>& resolutions,
                                    const RunConfig& cfg) {
    const auto ok = convergence_relations();
    if (std::find(ok.begin(), ok.end(), relation_id) == ok.end()) {
        std::string list;
        for (const auto& s : ok) list += (list.empty() ? "" : ", ") + s;
        throw DomainError("relation '" + relation_id + "' has no resolution parameter; supported: " + list);
    }
    if (resolutions.empty()) throw DomainError("convergence: empty resolution list");
    const bool fourier = relation_id == "FourierD";
    for (double r : resolutions) {
        if (fourier ? !(r > 0.0) : (r < 4.0 || std::fmod(r, 2.0) != 0.0)) {
            throw DomainError(fourier ? "convergence: T must be positive" : "convergence: grid sizes must be even and >= 4");
        }
    }
    const Env env(cfg);
    ConvergenceTable t;
    t.relation_id = relation_id;
    t.parameter = fourier ? "T" : "N";
    for (double res : resolutions) {
        const auto t0 = Clock::now();
        double residual = 0.0;
        if (fourier) {
            const cplx a{0.3, -0.15};
            for (cplx z : {cplx{0.2}, cplx{-0.5}}) residual = std::max(residual, fourier_residual(env, a, z, res));
        } else if (relation_id == "YB0") {
            residual = yb0_residual(env, static_cast<int>(res));
        } else {
            residual = yb1_residual(env, static_cast<int>(res));
        }
        t.rows.push_back({res, residual, std::chrono::duration<double, std::milli>(Clock::now() - t0).count()});
    }
    for (std::size_t k = 1; k < t.rows.size(); ++k) {
        const double prev = std::max(t.rows[k - 1].residual, kFloor);
        if (std::max(t.rows[k].residual, kFloor) > 1.1 * prev) t.non_increasing = false;
    }
    return t;
}

std::string to_csv(const ConvergenceTable& t) {
    std::ostringstream o;
    o << "resolution,residual,wall_time_ms\n";
    o << std::setprecision(17);
    for (const auto& r : t.rows) o << r.resolution << "," << r.residual << "," << r.wall_time_ms << "\n";
    return o.str();
}

// ---- documents ------------------------------------------------------------------------------------------

SuiteSummary summarize(const std::vector<RelationReport>& reports) {
    SuiteSummary s;
    for (const auto& r : reports) {
        if (r.skipped) ++s.skipped;
        else if (r.pass) ++s.passed;
        else ++s.failed;
    }
    return s;
}

nlohmann::json report_document(const std::vector<RelationReport>& reports, const RunConfig& cfg) {
    const auto s = summarize(reports);
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    return {
        {"schema", 1},
        {"version", version()},
        {"config", to_json(cfg)},
        {"summary", {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}}},
        {"reports", list},
    };
}

std::string render_table(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("schema", 0) != 1 || !doc.contains("reports")) {
        throw DomainError("report: not a schema-1 report document");
    }
    std::ostringstream o;
    o << "modrop " << doc.value("version", "?") << "\n";
    o << std::left << std::setw(18) << "relation" << std::setw(8) << "status" << std::right << std::setw(13)
      << "residual" << std::setw(13) << "tolerance" << std::setw(12) << "time_ms" << "\n";
    for (const auto& jr : doc.at("reports")) {
        const RelationReport r = report_from_json(jr);
        const std::string status = r.skipped ? "skip" : (!r.error.empty() ? "error" : (r.pass ? "pass" : "FAIL"));
        o << std::left << std::setw(18) << r.relation_id << std::setw(8) << status << std::right;
        if (r.skipped || std::isnan(r.residual)) {
            o << std::setw(13) << "-";
        } else {
            o << std::setw(13) << std::setprecision(3) << std::scientific << r.residual;
        }
        if (r.skipped) {
            o << std::setw(13) << "-";
        } else {
            o << std::setw(13) << std::setprecision(3) << std::scientific << r.tolerance;
        }
        o << std::setw(12) << std::fixed << std::setprecision(1) << r.wall_time_ms << std::defaultfloat << "\n";
        if (!r.error.empty()) o << "    error: " << r.error << "\n";
    }
    const auto& s = doc.at("summary");
    o << s.value("passed", 0) << " passed, " << s.value("failed", 0) << " failed, " << s.value("skipped", 0)
      << " skipped\n";
    return o.str();
}

}  // namespace modrop
