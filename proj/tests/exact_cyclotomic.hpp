#pragma once

// Exact zero test for integer combinations of roots of unity.  A sum
// sum_j c_j e(j/m) with integer c_j vanishes iff the polynomial sum c_j x^j
// is divisible by the m-th cyclotomic polynomial Phi_m (the minimal
// polynomial of e(1/m)); Phi_m is monic, so the division stays in Z and the
// whole test is exact integer arithmetic.

#include <map>
#include <vector>

namespace testutil {

// Coefficients of Phi_m, ascending degree.  Built by dividing x^m - 1 by
// Phi_d for every proper divisor d of m; memoised.
inline const std::vector<long>& cyclotomic(long m) {
    static std::map<long, std::vector<long>> cache;
    if (auto it = cache.find(m); it != cache.end()) return it->second;

    std::vector<long> num(static_cast<size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<size_t>(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const std::vector<long>& den = cyclotomic(d);
        // exact division by the monic polynomial den
        std::vector<long> q(num.size() - den.size() + 1, 0);
        for (size_t i = q.size(); i-- > 0;) {
            long coef = num[i + den.size() - 1];
            q[i] = coef;
            if (coef == 0) continue;
            for (size_t j = 0; j < den.size(); ++j)
                num[i + j] -= coef * den[j];
        }
        num = std::move(q);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

// True iff sum_j counts[j] * e(j/m) == 0 exactly (counts indexed by
// exponent mod m).
inline bool root_sum_is_zero(std::vector<long> counts, long m) {
    counts.resize(static_cast<size_t>(m), 0);
    const std::vector<long>& phi = cyclotomic(m);
    // reduce mod Phi_m; the value is zero iff the remainder is zero
    for (size_t i = counts.size(); i-- >= phi.size() && i + 1 > 0;) {
        long coef = counts[i];
        if (coef == 0) continue;
        for (size_t j = 0; j < phi.size(); ++j)
            counts[i + 1 - phi.size() + j] -= coef * phi[j];
    }
    for (size_t i = 0; i + 1 < phi.size(); ++i)
        if (counts[i] != 0) return false;
    return true;
}

} // namespace testutil
