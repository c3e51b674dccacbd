#pragma once

#include <chrono>
#include <cmath>
#include <complex>

#include "latsum/errors.hpp"
#include "latsum/gamma.hpp"
#include "latsum/quadrature.hpp"
#include "latsum/sums.hpp"
#include "latsum/theta.hpp"

namespace latsum {

namespace detail {

// Shared Mellin evaluator for integrals of the form
//   scale/Gamma(s) * int_0^inf t^{s-1} [thetaA(t) thetaB(t) - c_inf] dt
// where the integrand f(t) (bracket) tends to c0-like growth ~ K/t as t->0
// and decays ~ e^{-alpha t} as t -> infinity.  The head (0, t_min] is cut
// using the proven comparison theta3(e^{-t}) <= 1 + sqrt(pi/t) <= 2 sqrt(pi/t)
// for t <= pi, giving |f(t)| <= 4 pi / (lam_eff t) with lam_eff the product
// of the quadratic scales of the two thetas; the lower range is integrated
// in u = log t, the upper range panel-by-panel until e^{-t} kills it.
template <class F>
Complex mellin_integral(F&& f, Complex s, double split, double head_K,
                        double decay, const QuadratureSpec& q,
                        std::uint64_t& evals) {
    double sigma = s.real();
    if (!(sigma > 1.0))
        throw input_error("mellin_integral: need Re(s) > 1");

    auto integrand_u = [&](double u) {
        double t = std::exp(u);
        return std::exp(s * u) * f(t); // t^{s-1} dt = t^s du = e^{s u} du
    };
    auto integrand_t = [&](double t) {
        return std::exp((s - 1.0) * std::log(t)) * f(t);
    };

    // Coarse pass for the magnitude, then refined with absolute tolerances.
    double t_lo = std::min(split, 1e-4);
    Complex coarse =
        detail::gl_panel(integrand_u, std::log(t_lo), std::log(split), 20) +
        detail::gl_panel(integrand_t, split, split + 10.0, 20) +
        detail::gl_panel(integrand_t, split + 10.0, split + 30.0, 20);
    double mag = std::max(std::abs(coarse), 1e-6);
    double abs_tol = q.rel_tol * mag;

    // Head cut: mass of (0, t_min] bounded by head_K * t_min^{sigma-1}/(sigma-1).
    double t_min = std::pow(abs_tol * 0.05 * (sigma - 1.0) / head_K,
                            1.0 / (sigma - 1.0));
    if (!(t_min > 0.0) || t_min > t_lo) t_min = std::min(1e-8, t_lo);

    Complex total = detail::adaptive_gl(integrand_u, std::log(t_min),
                                        std::log(split), 0.45 * abs_tol,
                                        q.order, q.max_depth, evals, q.budget);
    // Upper range: fixed-width adaptive chunks until the exponential tail
    // bound certifies the remainder.
    double T = split;
    while (true) {
        double T2 = T + 12.0;
        total += detail::adaptive_gl(integrand_t, T, T2, 0.05 * abs_tol,
                                     q.order, q.max_depth, evals, q.budget);
        T = T2;
        // |f| <= decay * e^{-alpha T} with alpha >= 1 for all our thetas;
        // remaining mass < decay * e^{-T} * max(T^{sigma-1},1) * 2 for T > 2 sigma.
        double tail = 2.0 * decay * std::exp(-T) *
                      std::max(std::pow(T, sigma - 1.0), 1.0);
        if (tail < 0.05 * abs_tol || T > 600.0) break;
    }
    return total;
}

} // namespace detail

// Q(1, 0, lam; s) by the theta-Mellin route:
//   Q = 1/Gamma(s) int_0^inf t^{s-1} [theta3(e^{-t}) theta3(e^{-lam t}) - 1] dt.
inline SumResult q_theta_mellin(long lam, Complex s,
                                const QuadratureSpec& q = {}) {
    if (lam < 1) throw input_error("q_theta_mellin: lam must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t evals = 0;
    auto f = [&](double t) {
        return theta3(std::exp(-t)) * theta3(std::exp(-lam * t)) - 1.0;
    };
    // Head bound: theta3(e^{-t}) theta3(e^{-lam t}) <= 4 pi / (t sqrt(lam) t^{1/2}...)
    //   <= 4 pi / (lam^{1/2} t) for t <= pi/lam — conservative K = 4 pi.
    double split = 1.0 / static_cast<double>(lam);
    double head_K = 4.0 * kPi / std::sqrt(static_cast<double>(lam));
    Complex integral =
        detail::mellin_integral(f, s, split, head_K, 8.0, q, evals);
    SumResult res;
    res.value = integral / gamma_fn(s);
    res.error_estimate = q.rel_tol * std::abs(res.value);
    res.error_kind = ErrorKind::Empirical;
    res.terms = evals;
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

// S(p, r, j; s) by the theta-Mellin route:
//   S = j^{2s}/Gamma(s) int_0^inf t^{s-1}
//         [theta(j,p)(e^{-t}) theta(j,r)(e^{-t}) - c_inf] dt
// with c_inf = 1 when j | p and j | r (both residue classes contain 0),
// else 0.  No modular transformation is used.
inline SumResult s_sum_via_theta(long p, long r, long j, Complex s,
                                 const QuadratureSpec& q = {}) {
    if (j < 1) throw input_error("s_sum_via_theta: j must be >= 1");
    p %= j; if (p < 0) p += j;
    r %= j; if (r < 0) r += j;
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t evals = 0;
    double c_inf = (p == 0 && r == 0) ? 1.0 : 0.0;
    auto f = [&](double t) {
        double qn = std::exp(-t);
        return theta_residue(j, p, qn) * theta_residue(j, r, qn) - c_inf;
    };
    double split = 1.0 / static_cast<double>(j * j);
    // theta(j, ·)(e^{-t}) <= theta3(e^{-t}) <= 2 sqrt(pi/t) for t <= pi.
    double head_K = 4.0 * kPi;
    // Slowest decay of the bracket: smallest x^2 over allowed residues.
    double x2min = 1.0;
    if (c_inf == 0.0) {
        auto mindist = [&](long a) {
            double d1 = static_cast<double>(a);
            double d2 = static_cast<double>(j - a);
            double d = (a == 0) ? 0.0 : std::min(d1, d2);
            return d * d;
        };
        x2min = std::max(mindist(p) + mindist(r), 1.0);
    }
    (void)x2min; // decay >= e^{-t} always suffices for the tail cutoff
    Complex integral =
        detail::mellin_integral(f, s, split, head_K, 8.0, q, evals);
    SumResult res;
    Complex scale = std::exp(2.0 * s * std::log(static_cast<double>(j)));
    res.value = scale * integral / gamma_fn(s);
    res.error_estimate = q.rel_tol * std::abs(res.value);
    res.error_kind = ErrorKind::Empirical;
    res.terms = evals;
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

} // namespace latsum
