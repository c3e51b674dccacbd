#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "latsum/bernoulli.hpp"
#include "latsum/character.hpp"
#include "latsum/constants.hpp"
#include "latsum/errors.hpp"
#include "latsum/hurwitz.hpp"
#include "latsum/rational.hpp"

namespace latsum {

// (k, l) = sum over n = l mod k, n >= 1 of n^{-s} = k^{-s} zeta(s, l/k).
// Defined for 1 <= l <= k; gcd(k, l) need not be 1.
inline Complex kl_symbol(long k, long l, Complex s) {
    if (k < 1 || l < 1 || l > k)
        throw input_error("kl_symbol: need 1 <= l <= k");
    return std::exp(-s * std::log(static_cast<double>(k))) *
           hurwitz_zeta(s, static_cast<double>(l) / static_cast<double>(k));
}

// Parity-projected symbol (k, l)_+- = (k, l) ± (k, k - l).
inline Complex kl_symbol_signed(long k, long l, Complex s, int sign) {
    if (sign != 1 && sign != -1)
        throw input_error("kl_symbol_signed: sign must be +-1");
    Complex a = kl_symbol(k, l, s);
    if (l == k || 2 * l == k) // (k,k-l) pairs with itself or wraps
        return sign == 1 ? 2.0 * a : Complex(0.0);
    Complex b = kl_symbol(k, k - l, s);
    return sign == 1 ? a + b : a - b;
}

// L(s, chi) = k^{-s} sum_{n=1..k} chi(n) zeta(s, n/k).
inline Complex l_series(const DirichletCharacter& chi, Complex s) {
    if (chi.is_principal() && s == Complex(1.0, 0.0))
        throw pole_error("l_series: principal character has a pole at s = 1");
    long k = chi.modulus();
    if (k == 1) return riemann_zeta(s);
    bool at_one = (s == Complex(1.0, 0.0));
    Complex acc = 0.0;
    for (long n = 1; n <= k; ++n) {
        const RootOfUnity& c = chi.at(n);
        if (c.is_zero()) continue;
        // At s = 1 the simple poles of zeta(s, n/k) cancel across the
        // character sum (sum chi(n) = 0), so only finite parts contribute.
        Complex z = at_one
                        ? Complex(hurwitz_finite_part_at_1(
                              static_cast<double>(n) / k))
                        : hurwitz_zeta(s, static_cast<double>(n) / k);
        acc += c.value() * z;
    }
    return std::exp(-s * std::log(static_cast<double>(k))) * acc;
}

inline Complex l_series(const std::string& label, Complex s) {
    return l_series(character_by_label(label), s);
}

// L(1, chi) for non-principal chi by the symmetric limit
//   A(d) = [L(1+d) + L(1-d)]/2 = L(1) + c2 d^2 + c4 d^4 + ...
// extrapolated (two Richardson stages) over d = 1e-2, 5e-3, 2.5e-3.
inline Complex l_series_at_1(const DirichletCharacter& chi) {
    if (chi.is_principal())
        throw pole_error("l_series_at_1: principal character");
    const double d[3] = {1e-2, 5e-3, 2.5e-3};
    Complex A[3];
    for (int i = 0; i < 3; ++i)
        A[i] = 0.5 * (l_series(chi, Complex(1.0 + d[i], 0.0)) +
                      l_series(chi, Complex(1.0 - d[i], 0.0)));
    auto rich = [](Complex fa, Complex fb, double da, double db) {
        // eliminate the d^2 term
        double wa = da * da, wb = db * db;
        return (wa * fb - wb * fa) / (wa - wb);
    };
    Complex R1 = rich(A[0], A[1], d[0], d[1]);
    Complex R2 = rich(A[1], A[2], d[1], d[2]);
    // eliminate d^4
    double wa = d[0] * d[0] * d[1] * d[1], wb = d[1] * d[1] * d[2] * d[2];
    return (wa * R2 - wb * R1) / (wa - wb);
}

// Exact special value of a real primitive L at integer arguments matched to
// parity: negative parity (chi(-1) = -1) takes odd m = 2n-1, positive parity
// even m = 2n.  L(m, chi) = R * sqrt(k) * pi^m with the rational
//   R = (-1)^{n-1} * 2^{m-1} / k * sum_{a=1..k} chi(a) B_m(1 - a/k) / m!
struct ExactSpecialValue {
    Rational R;
    long k = 1;
    unsigned m = 0;
    double value() const {
        return to_double(R) * std::sqrt(static_cast<double>(k)) *
               std::pow(kPi, static_cast<double>(m));
    }
    std::string str() const {
        return rational_str(R) + " * sqrt(" + std::to_string(k) + ") * pi^" +
               std::to_string(m);
    }
};

inline ExactSpecialValue l_special_value(const DirichletCharacter& chi,
                                         unsigned m) {
    if (!chi.is_real() || (!chi.is_primitive() && chi.modulus() != 1))
        throw input_error("l_special_value: need a real primitive character");
    bool neg = chi.parity() == Parity::Negative;
    if (neg && (m % 2 != 1))
        throw input_error("l_special_value: negative parity needs odd m");
    if (!neg && (m % 2 != 0 || m == 0))
        throw input_error("l_special_value: positive parity needs even m >= 2");
    if (m > 40) throw input_error("l_special_value: m too large");

    long k = chi.modulus();
    Rational T = 0; // sum chi(a) B_m(1 - a/k) / m!
    for (long a = 1; a <= k; ++a) {
        int sg = chi.at(a).is_zero() ? 0 : chi.at(a).sign_if_real();
        if (sg == 0) continue;
        T += sg * bernoulli_polynomial(m, Rational(k - a, k));
    }
    T /= Rational(factorial_big(m));

    long n = neg ? (m + 1) / 2 : m / 2;
    int sign = (n % 2 == 1) ? 1 : -1; // (-1)^{n-1}
    Rational R = Rational(sign) *
                 pow_rational(Rational(2), static_cast<long>(m) - 1) * T /
                 Rational(k);
    return ExactSpecialValue{R, k, m};
}

inline ExactSpecialValue l_special_value(const std::string& label, unsigned m) {
    return l_special_value(character_by_label(label), m);
}

// Decomposition of (k, l) over Dirichlet characters.  For g = gcd(k, l) > 1,
// (k, l) = g^{-s} (k/g, l/g) exactly, and the reduced symbol expands as
//   (k', l') = 1/phi(k') * sum_chi conj(chi(l')) L(s, chi).
struct KLDecomposition {
    long k = 1, l = 1;      // original symbol
    long g = 1;             // scale: (k,l) = g^{-s} (kk, ll)
    long kk = 1, ll = 1;    // reduced symbol, gcd = 1
    std::vector<DirichletCharacter> chars;  // all characters mod kk
    std::vector<RootOfUnity> coeffs;        // conj(chi(ll)), same order

    Complex evaluate(Complex s) const {
        Complex acc = 0.0;
        for (size_t i = 0; i < chars.size(); ++i)
            acc += coeffs[i].value() * l_series(chars[i], s);
        acc /= static_cast<double>(euler_phi(kk));
        if (g > 1) acc *= std::exp(-s * std::log(static_cast<double>(g)));
        return acc;
    }
};

inline KLDecomposition kl_decompose(long k, long l) {
    if (k < 1 || l < 1 || l > k)
        throw input_error("kl_decompose: need 1 <= l <= k");
    KLDecomposition D;
    D.k = k;
    D.l = l;
    D.g = std::gcd(k, l);
    D.kk = k / D.g;
    D.ll = l / D.g;
    if (D.kk == 1) D.ll = 1;
    D.chars = enumerate_characters(D.kk);
    for (const auto& chi : D.chars) D.coeffs.push_back(chi.at(D.ll).conj());
    return D;
}

// Check of the refinement identity (k, l) = sum_{j=0..f-1} (f k, j k + l).
inline double expansion_identity_gap(long k, long l, long f, Complex s) {
    Complex lhs = kl_symbol(k, l, s);
    Complex rhs = 0.0;
    for (long j = 0; j < f; ++j) rhs += kl_symbol(f * k, j * k + l, s);
    return std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs));
}

} // namespace latsum
