#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/hurwitz.hpp"
#include "latsum/lseries.hpp"

namespace latsum {

// Sum families over the square lattice:
//   Q(a,b,c; s)     = sum' (a m^2 + b m n + c n^2)^{-s}, positive definite
//   S(p,r,j; s)     = sum  ((m + p/j)^2 + (n + r/j)^2)^{-s}
//   sigma(p,r,j; s) = sum' exp(2 pi i (m p + n r)/j) (m^2 + n^2)^{-s}
//   T(r; s)         = sum_{|m| != r|n|} (m^2 - r^2 n^2)^{-s}  (via (k,l) symbols)
// Primed sums omit (0,0); S omits terms whose shifted point is the origin
// (only possible when j | p and j | r).
struct QSpec { long a, b, c; };
struct SSpec { long p, r, j; };
struct SigmaSpec { long p, r, j; };
struct TSpec { long r; };
using SumSpec = std::variant<QSpec, SSpec, SigmaSpec, TSpec>;

enum class ErrorKind { Proven, Empirical };

struct SumResult {
    Complex value{};
    double error_estimate = 0.0;  // proven tail bound or empirical delta
    ErrorKind error_kind = ErrorKind::Proven;
    long radius = 0;              // last summed shell max(|m|,|n|)
    std::uint64_t terms = 0;
    double seconds = 0.0;
    bool convergence_warning = false;
};

namespace detail {

// Deterministic pairwise reduction of the per-shell subtotals.
inline Complex pairwise_sum(std::vector<Complex>& v) {
    size_t n = v.size();
    while (n > 1) {
        size_t h = 0;
        for (size_t i = 0; i + 1 < n; i += 2) v[h++] = v[i] + v[i + 1];
        if (n % 2 == 1) v[h++] = v[n - 1];
        n = h;
    }
    return n == 0 ? Complex(0.0) : v[0];
}

// Inverse power d^{-s}: fast multiplicative path for small positive integer
// real s, exp/log otherwise.
struct InvPow {
    Complex s;
    int int_s = 0; // > 0 when s is a small positive integer (real)
    explicit InvPow(Complex s_) : s(s_) {
        if (s.imag() == 0.0) {
            double r = s.real();
            double ri = std::nearbyint(r);
            if (r == ri && ri >= 1.0 && ri <= 16.0)
                int_s = static_cast<int>(ri);
        }
    }
    Complex operator()(double d) const {
        if (int_s) {
            double p = d;
            for (int i = 1; i < int_s; ++i) p *= d;
            return Complex(1.0 / p, 0.0);
        }
        if (s.imag() == 0.0) return Complex(std::pow(d, -s.real()), 0.0);
        return std::exp(-s * std::log(d));
    }
};

// Proven bound on the mass beyond shell R for quadratic-form sums:
// all omitted points have form value >= mu R'^2, and shell R' holds 8R'
// points, so tail <= 8 mu^{-sigma} sum_{R'>R} R'^{1-2sigma}
//               <= 4 mu^{-sigma} R^{2-2sigma} / (sigma - 1).
inline double q_tail(double mu, double sigma, long R) {
    return 4.0 * std::pow(mu, -sigma) *
           std::pow(static_cast<double>(R), 2.0 - 2.0 * sigma) / (sigma - 1.0);
}

// Bound for shifted sums: shell R' points sit at distance^2 >= (R'-1)^2,
// tail <= 8 sum_{R'>R} R' (R'-1)^{-2 sigma}
//      <= 16 R^{1-2 sigma} + 8 R^{2-2 sigma}/(sigma-1)   (R >= 2).
inline double s_tail(double sigma, long R) {
    double r = static_cast<double>(R);
    return 16.0 * std::pow(r, 1.0 - 2.0 * sigma) +
           8.0 * std::pow(r, 2.0 - 2.0 * sigma) / (sigma - 1.0);
}

} // namespace detail

// Q(a, b, c; s): positive-definite binary form, sum over (m,n) != (0,0).
inline SumResult q_sum(long a, long b, long c, Complex s, double tol_rel = 1e-8,
                       long max_radius = 2000000) {
    double disc = static_cast<double>(b) * b - 4.0 * static_cast<double>(a) * c;
    if (a <= 0 || disc >= 0)
        throw input_error("q_sum: form must be positive definite");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw input_error("q_sum: need Re(s) > 1");
    const double mu =
        0.5 * (static_cast<double>(a + c) -
               std::hypot(static_cast<double>(a - c), static_cast<double>(b)));

    auto t0 = std::chrono::steady_clock::now();
    detail::InvPow ip(s);
    auto form = [&](long m, long n) {
        return static_cast<double>(a) * m * m + static_cast<double>(b) * m * n +
               static_cast<double>(c) * n * n;
    };
    std::vector<Complex> shells;
    Complex run = 0.0;
    std::uint64_t terms = 0;
    SumResult res;
    const double da = static_cast<double>(a), db = static_cast<double>(b),
                 dc = static_cast<double>(c);
    for (long R = 1; R <= max_radius; ++R) {
        // Central symmetry Q(-m,-n) = Q(m,n): the top row and right column
        // of the shell mirror the bottom row and left column, so walk half
        // the points and double.  Along a row the form values advance by a
        // linear integer sequence, so two interleaved second-difference
        // recurrences (exact in double, the values stay integral and far
        // below 2^53) replace the per-point evaluation; two accumulators
        // keep the divides flowing.
        const double r = static_cast<double>(R);
        Complex h0 = 0.0, h1 = 0.0;
        // top row (m, R), m = -R..R: f(m) = a m^2 + (bR) m + cR^2
        double fA = (da - db + dc) * r * r;                    // f(-R)
        double fB = da * (r - 1) * (r - 1) - db * r * (r - 1) + dc * r * r;
        double dA = (-4 * da + 2 * db) * r + 4 * da;           // f(m+2)-f(m) at m=-R
        double dB = dA + 4 * da;                               // at m=-R+1
        for (long i = 0; i < R; ++i) {
            h0 += ip(fA);
            h1 += ip(fB);
            fA += dA; dA += 8 * da;
            fB += dB; dB += 8 * da;
        }
        h0 += ip(fA);                                          // m = R
        // right column (R, n), n = -R+1..R-1: g(n) = aR^2 + (bR) n + c n^2
        double gA = da * r * r - db * r * (r - 1) + dc * (r - 1) * (r - 1);
        double gB = da * r * r - db * r * (r - 2) + dc * (r - 2) * (r - 2);
        double eA = (-4 * dc + 2 * db) * r + 8 * dc;           // g(n+2)-g(n) at n=-R+1
        double eB = eA + 4 * dc;                               // at n=-R+2
        for (long i = 0; i + 1 < R; ++i) {
            h0 += ip(gA);
            h1 += ip(gB);
            gA += eA; eA += 8 * dc;
            gB += eB; eB += 8 * dc;
        }
        h0 += ip(gA);                                          // n = R-1
        Complex shell = 2.0 * (h0 + h1);
        terms += 8 * R;
        shells.push_back(shell);
        run += shell;
        if (R >= 4) {
            double bound = detail::q_tail(mu, sigma, R);
            if (bound <= tol_rel * std::abs(run)) {
                res.value = detail::pairwise_sum(shells);
                res.error_estimate = bound;
                res.error_kind = ErrorKind::Proven;
                res.radius = R;
                res.terms = terms;
                res.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                return res;
            }
        }
    }
    throw precision_error("q_sum: tail bound not met within max_radius");
}

// S(p, r, j; s): shifted square-lattice sum.  The (m,n) grid is summed in
// shells; the origin term is included unless the shifted point is exactly
// the origin.
inline SumResult s_sum(long p, long r, long j, Complex s, double tol_rel = 1e-8,
                       long max_radius = 2000000) {
    if (j < 1) throw input_error("s_sum: j must be >= 1");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw input_error("s_sum: need Re(s) > 1");
    p %= j; if (p < 0) p += j;
    r %= j; if (r < 0) r += j;
    const double dp = static_cast<double>(p) / j;
    const double dr = static_cast<double>(r) / j;

    auto t0 = std::chrono::steady_clock::now();
    detail::InvPow ip(s);
    auto val = [&](long m, long n) {
        double x = m + dp, y = n + dr;
        return x * x + y * y;
    };
    std::vector<Complex> shells;
    Complex run = 0.0;
    std::uint64_t terms = 0;
    // Shell 0: the single point (0,0); excluded only if it maps to origin.
    if (!(p == 0 && r == 0)) {
        Complex c0 = ip(val(0, 0));
        shells.push_back(c0);
        run += c0;
        ++terms;
    }
    SumResult res;
    for (long R = 1; R <= max_radius; ++R) {
        Complex shell = 0.0;
        for (long m = -R; m <= R; ++m) {
            shell += ip(val(m, R)) + ip(val(m, -R));
            terms += 2;
        }
        for (long n = -R + 1; n <= R - 1; ++n) {
            shell += ip(val(R, n)) + ip(val(-R, n));
            terms += 2;
        }
        shells.push_back(shell);
        run += shell;
        if (R >= 4) {
            double bound = detail::s_tail(sigma, R);
            if (bound <= tol_rel * std::abs(run)) {
                res.value = detail::pairwise_sum(shells);
                res.error_estimate = bound;
                res.error_kind = ErrorKind::Proven;
                res.radius = R;
                res.terms = terms;
                res.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                return res;
            }
        }
    }
    throw precision_error("s_sum: tail bound not met within max_radius");
}

// sigma(p, r, j; s): phased sum over (m,n) != (0,0) with weight
// exp(2 pi i (m p + n r)/j) (m^2 + n^2)^{-s}.
inline SumResult sigma_sum(long p, long r, long j, Complex s,
                           double tol_rel = 1e-8, long max_radius = 2000000) {
    if (j < 1) throw input_error("sigma_sum: j must be >= 1");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw input_error("sigma_sum: need Re(s) > 1");
    p %= j; if (p < 0) p += j;
    r %= j; if (r < 0) r += j;

    auto t0 = std::chrono::steady_clock::now();
    detail::InvPow ip(s);
    std::vector<Complex> phase(static_cast<size_t>(j));
    for (long t = 0; t < j; ++t)
        phase[static_cast<size_t>(t)] = RootOfUnity::from_exponent(t, j).value();
    auto ph = [&](long m, long n) -> const Complex& {
        long e = (m % j) * p + (n % j) * r;
        e %= j;
        if (e < 0) e += j;
        return phase[static_cast<size_t>(e)];
    };
    std::vector<Complex> shells;
    Complex run = 0.0;
    std::uint64_t terms = 0;
    SumResult res;
    for (long R = 1; R <= max_radius; ++R) {
        Complex shell = 0.0;
        for (long m = -R; m <= R; ++m) {
            double d = static_cast<double>(m) * m + static_cast<double>(R) * R;
            Complex w = ip(d);
            shell += ph(m, R) * w + ph(m, -R) * w;
            terms += 2;
        }
        for (long n = -R + 1; n <= R - 1; ++n) {
            double d = static_cast<double>(R) * R + static_cast<double>(n) * n;
            Complex w = ip(d);
            shell += ph(R, n) * w + ph(-R, n) * w;
            terms += 2;
        }
        shells.push_back(shell);
        run += shell;
        if (R >= 8) {
            double bound = detail::q_tail(1.0, sigma, R);
            // Relative to the unphased mass is not available; use the phased
            // partial with an absolute floor so cancellation-heavy sums
            // still terminate.
            double scale = std::max(std::abs(run), 1e-3);
            if (bound <= tol_rel * scale) {
                res.value = detail::pairwise_sum(shells);
                res.error_estimate = bound;
                res.error_kind = ErrorKind::Proven;
                res.radius = R;
                res.terms = terms;
                res.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                return res;
            }
        }
    }
    throw precision_error("sigma_sum: tail bound not met within max_radius");
}

// T(1, 0, -r^2; s) over |m| != r|n| via (k,l)-symbol resummation:
//   T = 4 r^{-2s} (1 - 2^{1-s} + 2^{1-2s}) zeta(s)^2
//     + 2 sum_{t=1..r-1} [(2r, t) + (2r, 2r - t)]^2.
inline Complex t_via_kl(long r, Complex s) {
    if (r < 1) throw input_error("t_via_kl: r must be >= 1");
    if (s == Complex(1.0, 0.0)) throw pole_error("t_via_kl: pole at s = 1");
    Complex z = riemann_zeta(s);
    Complex two_s = std::exp(-s * std::log(2.0));
    Complex acc = 4.0 * std::exp(-2.0 * s * std::log(static_cast<double>(r))) *
                  (1.0 - 2.0 * two_s + 2.0 * two_s * two_s) * z * z;
    for (long t = 1; t < r; ++t) {
        Complex u = kl_symbol(2 * r, t, s) + kl_symbol(2 * r, 2 * r - t, s);
        acc += 2.0 * u * u;
    }
    return acc;
}

// Direct (conditionally convergent style) evaluation of T with an empirical
// error estimate: difference between the full partial sum and the partial
// at half the radius.  No proven bound exists on this route.
inline SumResult t_direct(long r, Complex s, long radius = 4000) {
    if (r < 1) throw input_error("t_direct: r must be >= 1");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw input_error("t_direct: need Re(s) > 1");
    auto t0 = std::chrono::steady_clock::now();
    detail::InvPow ip(s);
    const double r2 = static_cast<double>(r) * r;
    std::vector<Complex> shells;
    Complex run = 0.0, half = 0.0;
    std::uint64_t terms = 0;
    std::vector<double> deltas;
    for (long R = 1; R <= radius; ++R) {
        Complex shell = 0.0;
        auto add = [&](long m, long n) {
            double d = static_cast<double>(m) * m - r2 * n * n;
            if (d == 0.0) return;
            if (d < 0.0) d = -d;
            shell += ip(d);
            ++terms;
        };
        for (long m = -R; m <= R; ++m) { add(m, R); add(m, -R); }
        for (long n = -R + 1; n <= R - 1; ++n) { add(R, n); add(-R, n); }
        shells.push_back(shell);
        run += shell;
        deltas.push_back(std::abs(shell));
        if (R == radius / 2) half = run;
    }
    SumResult res;
    res.value = detail::pairwise_sum(shells);
    res.error_estimate = std::abs(res.value - half);
    res.error_kind = ErrorKind::Empirical;
    res.radius = radius;
    res.terms = terms;
    // Flag stalled convergence: recent shell contributions not decreasing.
    if (deltas.size() >= 8) {
        double recent = 0, prior = 0;
        for (size_t i = deltas.size() - 4; i < deltas.size(); ++i)
            recent += deltas[i];
        for (size_t i = deltas.size() - 8; i < deltas.size() - 4; ++i)
            prior += deltas[i];
        if (recent >= prior && recent > 0) res.convergence_warning = true;
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

} // namespace latsum
