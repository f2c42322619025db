#include "modrop/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace modrop {

namespace {

constexpr double kStripFactor = 0.8;
constexpr double kInnerFactor = 0.5;
constexpr double kSingularRadius = 1e-6;
constexpr double kTailLog = 38.0;  // e^{-38} ~ 3e-17
constexpr int kReanchor = 32;

std::string fmt(cplx z) {
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
}

}  // namespace

GammaEvaluator::GammaEvaluator(const ModularParams& params, const NumericsConfig& numerics)
    : params_(params), numerics_(numerics) {
    numerics_.validate(params_);
    const double a = params_.im_omega();
    const double ap = params_.im_omega_p();
    decay_ = a + ap;
    const double delta = numerics_.contour_lift;
    const double pole_row = 2.0 * kPi * std::min(params_.b(), 1.0 / params_.b());
    // Width of the analyticity strip around the lifted line.
    const double d = std::min(delta, pole_row - delta) * 0.9;
    step_ = 2.0 * kPi * d / 40.0;
    disc_bound_ = std::exp(-2.0 * kPi * d / step_);

    const double min_rate = (1.0 - kStripFactor) * decay_;
    const double umax = kTailLog / min_rate + 5.0;
    const auto kmax = static_cast<std::size_t>(std::ceil(umax / step_));
    w_pos_.reserve(kmax + 1);
    w_neg_.reserve(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) {
        for (int sgn : {1, -1}) {
            const cplx t{sgn * static_cast<double>(k) * step_, delta};
            const cplx w = -0.25 * step_ / (t * std::sin(params_.omega * t) * std::sin(params_.omega_p * t));
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                throw ConvergenceError("GammaEvaluator: quadrature weight overflow; b too extreme");
            }
            (sgn > 0 ? w_pos_ : w_neg_).push_back(w);
        }
    }

    // gamma(omega'' + e) ~ gamma(omega - omega') (i pi/omega) e, and reflection.
    const cplx gp = gamma(params_.omega - params_.omega_p) * kI * kPi / params_.omega;
    residue_ = -std::exp(kI * params_.beta) * std::exp(kI * kPi * params_.omega_pp * params_.omega_pp) / gp;

    // Calibrate the accuracy floor on a lattice inside the strip.
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const cplx z{-1.9 + 0.2 * i, 0.3 * std::sin(0.7 * i) * params_.im_omega()};
        const cplx r1 = gamma(z + params_.omega_p) / gamma(z - params_.omega_p) /
                        (1.0 + std::exp(-kI * kPi * z / params_.omega));
        const cplx r2 = gamma(z) * gamma(-z) / (std::exp(kI * params_.beta) * std::exp(kI * kPi * z * z));
        worst = std::max({worst, std::abs(r1 - 1.0), std::abs(r2 - 1.0)});
    }
    floor_ = std::max(worst, 1e-15);
}

void GammaEvaluator::check_singular(cplx z) const {
    const double reach = std::abs(z.imag()) + 1.0;
    for (int m = 0; 2.0 * m * params_.im_omega() <= reach; ++m) {
        for (int n = 0; 2.0 * m * params_.im_omega() + 2.0 * n * params_.im_omega_p() <= reach; ++n) {
            const cplx zero = params_.omega_pp + 2.0 * m * params_.omega + 2.0 * n * params_.omega_p;
            if (std::abs(z - zero) < kSingularRadius) {
                throw SingularityError("gamma: argument " + fmt(z) + " is at the zero " + fmt(zero), zero);
            }
            if (std::abs(z + zero) < kSingularRadius) {
                throw SingularityError("gamma: argument " + fmt(z) + " is at the pole " + fmt(-zero), -zero);
            }
        }
    }
}

Estimate GammaEvaluator::direct(cplx z) const {
    const double rate = decay_ - std::abs(z.imag());
    const double umax = kTailLog / rate + 5.0;
    const std::size_t kmax = std::min(w_pos_.size() - 1, static_cast<std::size_t>(std::ceil(umax / step_)));

    const cplx step_pos = std::exp(kI * step_ * z);
    const cplx step_neg = std::exp(-kI * step_ * z);
    cplx ep{1.0, 0.0};
    cplx en{1.0, 0.0};
    cplx sum = w_pos_[0];
    double mag = std::abs(w_pos_[0]);
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (k % kReanchor == 0) {
            const double u = static_cast<double>(k) * step_;
            ep = std::exp(kI * u * z);
            en = std::exp(-kI * u * z);
        } else {
            ep *= step_pos;
            en *= step_neg;
        }
        const cplx tp = w_pos_[k] * ep;
        const cplx tn = w_neg_[k] * en;
        sum += tp + tn;
        mag += std::abs(tp) + std::abs(tn);
    }
    const cplx lift = std::exp(-numerics_.contour_lift * z);
    const cplx log_gamma = lift * sum;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * mag * std::abs(lift);
    return {std::exp(log_gamma), roundoff + disc_bound_ * (1.0 + std::abs(lift)) + 1e-16};
}

Estimate GammaEvaluator::reduced(cplx z, int depth) const {
    if (depth > 4096) throw ConvergenceError("gamma: strip reduction did not terminate");
    const double strip = kStripFactor * params_.im_omega_pp();
    if (z.real() < 0.0) {
        const Estimate r = reduced(-z, depth + 1);
        return {std::exp(kI * params_.beta) * std::exp(kI * kPi * z * z) / r.value, r.rel_error + 1e-16};
    }
    if (std::abs(z.imag()) <= strip && depth == 0) return direct(z);
    if (std::abs(z.imag()) <= kInnerFactor * params_.im_omega_pp()) return direct(z);

    // Step by twice the smaller half-period.
    const bool use_omega = params_.im_omega() <= params_.im_omega_p();
    const cplx ws = use_omega ? params_.omega : params_.omega_p;
    const cplx wo = use_omega ? params_.omega_p : params_.omega;
    if (z.imag() > 0.0) {
        const cplx mid = z - ws;
        const Estimate r = reduced(mid - ws, depth + 1);
        return {r.value * (1.0 + std::exp(-kI * kPi * mid / wo)), r.rel_error + 4e-16};
    }
    const cplx mid = z + ws;
    const Estimate r = reduced(mid + ws, depth + 1);
    return {r.value / (1.0 + std::exp(-kI * kPi * mid / wo)), r.rel_error + 4e-16};
}

Estimate GammaEvaluator::gamma_estimate(cplx z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("gamma: non-finite argument");
    }
    check_singular(z);
    Estimate e = reduced(z, 0);
    e.rel_error = std::max(e.rel_error, floor_);
    return e;
}

cplx GammaEvaluator::D(cplx a, cplx z) const {
    cplx num;
    cplx den;
    try {
        num = gamma(z + a);
    } catch (const SingularityError& e) {
        throw SingularityError(std::string("D_a(z): z+a offends: ") + e.what(), e.lattice_point());
    }
    try {
        den = gamma(z - a);
    } catch (const SingularityError& e) {
        throw SingularityError(std::string("D_a(z): z-a offends: ") + e.what(), e.lattice_point());
    }
    return std::exp(-2.0 * kPi * kI * a * z) * num / den;
}

cplx GammaEvaluator::A(cplx a) const {
    const cplx w = params_.omega_pp;
    const cplx s = 2.0 * a + w;
    return gamma(-w - 2.0 * a) * std::exp(-0.5 * kI * kPi * s * s - 0.5 * kI * params_.beta);
}

cplx GammaEvaluator::fourier_D(cplx a, cplx z, double T) const {
    if (!(a.imag() < 0.0)) {
        throw ConvergenceError("fourier_D: D_a(t) does not decay on the real line unless Im(a) < 0");
    }
    const double d = params_.im_omega_pp() + a.imag();
    if (!(d > 0.0)) {
        throw DomainError("fourier_D: Im(a) must exceed -Im(omega''); D_a has poles on the real line otherwise");
    }
    if (T <= 0.0) T = numerics_.truncation;
    // Trapezoid in an analyticity strip of half-width d; the e^{2 pi i t z} factor
    // grows by e^{2 pi d |z|} at the strip edge.
    const double dd = 0.9 * d;
    const double h = 2.0 * kPi * dd / (40.0 + 2.0 * kPi * dd * std::abs(z));
    const auto n = static_cast<long>(std::ceil(T / h));
    cplx sum = D(a, 0.0);
    for (long k = 1; k <= n; ++k) {
        const double t = static_cast<double>(k) * h;
        const double wt = (k == n) ? 0.5 : 1.0;
        sum += wt * (D(a, t) * std::exp(2.0 * kPi * kI * t * z) + D(a, -t) * std::exp(-2.0 * kPi * kI * t * z));
    }
    return A(a) * h * sum;
}

}  // namespace modrop
