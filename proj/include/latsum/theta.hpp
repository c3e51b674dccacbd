#pragma once

#include <cmath>

#include "latsum/errors.hpp"

namespace latsum {

// theta3(q) = 1 + 2 sum_{n>=1} q^{n^2}, 0 <= q < 1.
inline double theta3(double q, double cutoff = 1e-17) {
    if (!(q >= 0.0) || q >= 1.0)
        throw input_error("theta3: nome must lie in [0, 1)");
    if (q == 0.0) return 1.0;
    double sum = 1.0;
    double qn = 1.0;          // q^{n^2}
    double qodd = q;          // q^{2n-1}
    const double q2 = q * q;
    for (int n = 1; n < 100000000; ++n) {
        qn *= qodd;           // q^{(n-1)^2} * q^{2n-1} = q^{n^2}
        qodd *= q2;
        double t = 2.0 * qn;
        sum += t;
        if (t < cutoff * sum) return sum;
    }
    throw precision_error("theta3: series did not converge");
}

// Residue theta: theta(j, p)(q) = sum_{x = p mod j} q^{x^2}, summing over all
// integers x congruent to p modulo j.  0 <= q < 1, j >= 1.
inline double theta_residue(long j, long p, double q, double cutoff = 1e-17) {
    if (j < 1) throw input_error("theta_residue: j must be >= 1");
    if (!(q >= 0.0) || q >= 1.0)
        throw input_error("theta_residue: nome must lie in [0, 1)");
    p %= j;
    if (p < 0) p += j;
    if (q == 0.0) return p == 0 ? 1.0 : 0.0;
    const double lq = std::log(q);
    double sum = 0.0;
    // Upward x = p, p+j, ...; downward x = p-j, p-2j, ...  Terms are
    // monotone decreasing once |x| > 0, so a relative cutoff per direction
    // is safe.
    for (double x = p;; x += j) {
        double t = std::exp(x * x * lq);
        sum += t;
        if (x > 0 && t < cutoff * (sum + 1e-300)) break;
        if (x * x * lq < -750.0) break;
    }
    for (double x = p - j;; x -= j) {
        double t = std::exp(x * x * lq);
        sum += t;
        if (t < cutoff * (sum + 1e-300)) break;
        if (x * x * lq < -750.0) break;
    }
    return sum;
}

} // namespace latsum
