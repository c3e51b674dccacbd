#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "latsum/errors.hpp"

namespace latsum {

namespace detail {

// 13-term Lanczos rational approximation, g = 6.02468..., double precision.
// Standard coefficient set (Pugh/boost lineage); denominator is
// z(z+1)...(z+11) expanded.
inline constexpr double lanczos_g = 6.024680040776729583740234375;

inline std::complex<double> lanczos_sum(std::complex<double> z) {
    static const double num[13] = {
        23531376880.41075968857200767445163675473,
        42919803642.64909876895789904700198885093,
        35711959237.35566804944018545154716670596,
        17921034426.03720969991975575445893111267,
        6039542586.35202800506429164430729792107,
        1439720407.311721673663223072794912393972,
        248874557.8620541565114603864132294232163,
        31426415.58540019438061423162831820536287,
        2876370.628935372441225409051620849613599,
        186056.2653952234950402949897160456992822,
        8071.672002365816210638002902272250613822,
        210.8242777515793458725097339207133627117,
        2.506628274631000270164908177133837338626};
    static const double den[13] = {
        0.0,       39916800.0, 120543840.0, 150917976.0, 105258076.0,
        45995730.0, 13339535.0, 2637558.0,  357423.0,    32670.0,
        1925.0,    66.0,       1.0};
    std::complex<double> n = 0.0, d = 0.0;
    if (std::abs(z) < 13.0) {
        for (int i = 12; i >= 0; --i) {
            n = n * z + num[i];
            d = d * z + den[i];
        }
    } else {
        // Horner in 1/z for large |z| to avoid overflow in the powers.
        std::complex<double> iz = 1.0 / z;
        for (int i = 0; i <= 12; ++i) {
            n = n * iz + num[i];
            d = d * iz + den[i];
        }
    }
    return n / d;
}

} // namespace detail

// Gamma function for complex argument, Lanczos + reflection.
inline std::complex<double> gamma_fn(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw pole_error("gamma_fn: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    }
    std::complex<double> zgh = z + (detail::lanczos_g - 0.5);
    std::complex<double> lg = (z - 0.5) * std::log(zgh) - zgh;
    return detail::lanczos_sum(z) * std::exp(lg);
}

inline std::complex<double> log_gamma(std::complex<double> z) {
    // Principal-ish log via the same approximation; adequate for ratios.
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    std::complex<double> zgh = z + (detail::lanczos_g - 0.5);
    return std::log(detail::lanczos_sum(z)) + (z - 0.5) * std::log(zgh) - zgh;
}

} // namespace latsum
