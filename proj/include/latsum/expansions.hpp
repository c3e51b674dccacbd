#pragma once

#include <array>
#include <cmath>

#include "latsum/constants.hpp"
#include "latsum/errors.hpp"
#include "latsum/gamma.hpp"
#include "latsum/sums.hpp"

namespace latsum {

// Functional equation for T(s) = T(1,0,-r^2; s):
//   T(s) = (pi/r)^{2s-1} [Gamma(1-s)/Gamma(s)] tan(pi s/2) T(1-s).
struct FuncEqResult {
    long r = 1;
    Complex s{};
    Complex lhs{}, rhs{};
    double rel_err = 0.0;
    bool pass = false;
};

inline FuncEqResult functional_equation_check(long r, Complex s,
                                              double tol = 1e-8) {
    FuncEqResult res;
    res.r = r;
    res.s = s;
    res.lhs = t_via_kl(r, s);
    Complex ratio = gamma_fn(1.0 - s) / gamma_fn(s);
    Complex pref =
        std::exp((2.0 * s - 1.0) * std::log(kPi / static_cast<double>(r)));
    Complex tn = std::tan(0.5 * kPi * s);
    res.rhs = pref * ratio * tn * t_via_kl(r, 1.0 - s);
    double scale = std::max(std::abs(res.lhs), std::abs(res.rhs));
    res.rel_err = scale > 0 ? std::abs(res.lhs - res.rhs) / scale : 0.0;
    res.pass = res.rel_err <= tol;
    return res;
}

namespace detail {

// Solve the 3x3 system M x = y by Gaussian elimination with pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> M,
                                    std::array<double, 3> y) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        std::swap(y[c], y[piv]);
        for (int r = c + 1; r < 3; ++r) {
            double f = M[r][c] / M[c][c];
            for (int cc = c; cc < 3; ++cc) M[r][cc] -= f * M[c][cc];
            y[r] -= f * y[c];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double acc = y[r];
        for (int cc = r + 1; cc < 3; ++cc) acc -= M[r][cc] * x[cc];
        x[r] = acc / M[r][r];
    }
    return x;
}

} // namespace detail

// Laurent data of T at the double pole s = 1:
//   T(1+e) = c_{-2}/e^2 + c_{-1}/e + c_0 + c_1 e + ...
// Fitted from T(1 +- e) on e in {1e-2, 5e-3, 2.5e-3} via the symmetric and
// antisymmetric combinations (each a clean 3x3 solve).  Expected:
//   c_{-2} = 2/r,  c_{-1} = 4 gamma / r,
//   C(r) := c_0 - 2(gamma^2 - 2 gamma_1)/r   (gamma_1 the standard first
// Stieltjes constant, negative) matches 2 ln^2 2 (r=1), (3/2) ln^2 2 (r=2),
// (2/3) ln^2 2 + (1/3) ln^2 3 (r=3).
struct PoleExpansionResult {
    long r = 1;
    double c_m2 = 0.0, c_m1 = 0.0, c_0 = 0.0;
    double expected_m2 = 0.0, expected_m1 = 0.0;
    double Cr = 0.0;          // c_0 - 2(gamma^2 - 2 gamma_1)/r
    double err_m2 = 0.0, err_m1 = 0.0;
};

inline PoleExpansionResult pole_expansion(long r) {
    if (r < 1) throw input_error("pole_expansion: r must be >= 1");
    const std::array<double, 3> eps{1e-2, 5e-3, 2.5e-3};
    std::array<double, 3> A{}, B{};
    for (int i = 0; i < 3; ++i) {
        double e = eps[i];
        Complex tp = t_via_kl(r, Complex(1.0 + e, 0.0));
        Complex tm = t_via_kl(r, Complex(1.0 - e, 0.0));
        A[i] = 0.5 * (tp.real() + tm.real()); // c-2/e^2 + c0 + c2 e^2
        B[i] = 0.5 * (tp.real() - tm.real()); // c-1/e + c1 e + c3 e^3
    }
    std::array<std::array<double, 3>, 3> MA{}, MB{};
    for (int i = 0; i < 3; ++i) {
        double e = eps[i];
        MA[i] = {1.0 / (e * e), 1.0, e * e};
        MB[i] = {1.0 / e, e, e * e * e};
    }
    auto xa = detail::solve3(MA, A);
    auto xb = detail::solve3(MB, B);
    PoleExpansionResult res;
    res.r = r;
    res.c_m2 = xa[0];
    res.c_0 = xa[1];
    res.c_m1 = xb[0];
    res.expected_m2 = 2.0 / static_cast<double>(r);
    res.expected_m1 = 4.0 * kEulerGamma / static_cast<double>(r);
    res.err_m2 = std::abs(res.c_m2 - res.expected_m2);
    res.err_m1 = std::abs(res.c_m1 - res.expected_m1);
    res.Cr = res.c_0 -
             2.0 * (kEulerGamma * kEulerGamma - 2.0 * kStieltjesGamma1) /
                 static_cast<double>(r);
    return res;
}

// Known closed forms of C(r) for r <= 3 (NaN otherwise).
inline double pole_constant_reference(long r) {
    double l2 = std::log(2.0), l3 = std::log(3.0);
    switch (r) {
        case 1: return 2.0 * l2 * l2;
        case 2: return 1.5 * l2 * l2;
        case 3: return (2.0 / 3.0) * l2 * l2 + (1.0 / 3.0) * l3 * l3;
        default: return std::nan("");
    }
}

// Behaviour at s = 0: T(0) = 1 exactly and T'(0) = 2 log(pi/r), so
//   T(s) = 1 + 2 s log(pi/r) + O(s^2).
struct ZeroExpansionResult {
    long r = 1;
    double value_at_0 = 0.0;   // expect 1
    double slope = 0.0;        // fitted
    double slope_expected = 0.0;
};

inline ZeroExpansionResult zero_expansion(long r) {
    if (r < 1) throw input_error("zero_expansion: r must be >= 1");
    ZeroExpansionResult res;
    res.r = r;
    res.value_at_0 = t_via_kl(r, Complex(0.0, 0.0)).real();
    auto D = [&](double h) {
        return (t_via_kl(r, Complex(h, 0.0)).real() -
                t_via_kl(r, Complex(-h, 0.0)).real()) /
               (2.0 * h);
    };
    double h1 = 1e-3, h2 = 1e-4;
    double d1 = D(h1), d2 = D(h2);
    // Richardson: error O(h^2)
    res.slope = (h1 * h1 * d2 - h2 * h2 * d1) / (h1 * h1 - h2 * h2);
    res.slope_expected = 2.0 * std::log(kPi / static_cast<double>(r));
    return res;
}

// Class-number relation for real quadratic fields:
//   L_k(1) = 2 h log(eps0) / sqrt(k), eps0 the fundamental unit.
struct ClassNumberCheck {
    long k = 0;
    long h = 0;
    double eps0 = 0.0;
    double lhs = 0.0, rhs = 0.0;
    double abs_err = 0.0;
};

inline ClassNumberCheck class_number_check(long k, long h, double eps0) {
    ClassNumberCheck res;
    res.k = k;
    res.h = h;
    res.eps0 = eps0;
    res.lhs = l_series_at_1(character_by_label("L_{" + std::to_string(k) + "}"))
                  .real();
    res.rhs = 2.0 * h * std::log(eps0) / std::sqrt(static_cast<double>(k));
    res.abs_err = std::abs(res.lhs - res.rhs);
    return res;
}

} // namespace latsum
