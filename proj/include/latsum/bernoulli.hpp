#pragma once

#include <vector>

#include "latsum/errors.hpp"
#include "latsum/rational.hpp"

namespace latsum {

inline constexpr unsigned kBernoulliMax = 64;

// Exact Bernoulli numbers B_0..B_64 (B_1 = -1/2 convention), cached.
inline const Rational& bernoulli_number(unsigned n) {
    static const std::vector<Rational> table = [] {
        std::vector<Rational> b(kBernoulliMax + 1);
        b[0] = 1;
        for (unsigned m = 1; m <= kBernoulliMax; ++m) {
            // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
            Rational acc = 0;
            for (unsigned j = 0; j < m; ++j)
                acc += Rational(binomial_big(m + 1, j)) * b[j];
            b[m] = -acc / (m + 1);
        }
        return b;
    }();
    if (n > kBernoulliMax)
        throw input_error("bernoulli_number: index beyond cached range");
    return table[n];
}

// Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^{n-j}, exact, by Horner.
inline Rational bernoulli_polynomial(unsigned n, const Rational& x) {
    Rational acc = 0;
    for (unsigned j = 0; j <= n; ++j)
        acc = acc * x + Rational(binomial_big(n, j)) * bernoulli_number(j);
    return acc;
}

} // namespace latsum
