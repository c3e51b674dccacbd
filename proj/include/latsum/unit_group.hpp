#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "latsum/errors.hpp"

namespace latsum {

inline long mulmod(long a, long b, long m) {
    return static_cast<long>(static_cast<__int128>(a) * b % m);
}

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline long euler_phi(long n) {
    long phi = n;
    for (auto [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

namespace detail {

// Primitive root mod p^e for odd prime p (e >= 1).
inline long primitive_root_odd(long p, int e) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    long phi_p = p - 1;
    auto fac = factorize(phi_p);
    long g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [q, _] : fac)
            if (powmod(g, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (e == 1) return g;
    // g generates mod p; g or g+p generates mod p^e (any e >= 2).
    if (powmod(g, p - 1, p * p) == 1) g += p;
    return g % pe;
}

} // namespace detail

// Structure of (Z/kZ)^*: independent generators with their orders, and a
// discrete-log table indexed by residue (empty vector for non-units).
struct UnitGroup {
    long k = 1;
    long phi = 1;
    long lambda = 1;                      // exponent of the group (Carmichael)
    std::vector<long> gens;               // generators mod k
    std::vector<long> orders;             // orders, product == phi
    std::vector<std::vector<int>> dlog;   // dlog[u][i] = exponent of gens[i]
    std::vector<char> unit_mask;          // 1 iff residue is invertible

    bool is_unit(long n) const {
        n %= k;
        if (n < 0) n += k;
        return unit_mask[static_cast<size_t>(n)] != 0;
    }
};

inline UnitGroup unit_group(long k) {
    if (k < 1 || k > 1000000)
        throw input_error("unit_group: modulus out of range [1, 1e6]");
    UnitGroup G;
    G.k = k;
    G.phi = euler_phi(k);
    G.dlog.assign(static_cast<size_t>(k), {});
    G.unit_mask.assign(static_cast<size_t>(k), 0);
    if (k == 1) {
        G.unit_mask[0] = 1; // the single residue counts as the unit
        G.lambda = 1;
        return G;
    }

    // Component generators, CRT-lifted to mod k (g at its own prime power,
    // 1 at every other component).
    for (auto [p, e] : factorize(k)) {
        long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        long rest = k / pe;
        auto lift = [&](long g) {
            // x = g mod pe, x = 1 mod rest
            if (rest == 1) return g % k;
            for (long x = g % k;; x += pe)
                if (x % rest == 1) return x % k;
        };
        if (p == 2) {
            if (e == 1) continue;          // trivial component
            G.gens.push_back(lift(pe - 1)); // -1 mod 2^e
            G.orders.push_back(2);
            if (e >= 3) {
                G.gens.push_back(lift(5));
                G.orders.push_back(pe / 4); // ord(5) = 2^{e-2}
            }
        } else {
            G.gens.push_back(lift(detail::primitive_root_odd(p, e)));
            G.orders.push_back(pe - pe / p); // phi(p^e)
        }
    }

    G.lambda = 1;
    for (long o : G.orders) G.lambda = std::lcm(G.lambda, o);

    // Fill the discrete-log table by enumerating all products of generator
    // powers — one modular multiply per unit.
    size_t ng = G.gens.size();
    std::vector<int> expo(ng, 0);
    long u = 1;
    long count = 0;
    while (true) {
        G.dlog[static_cast<size_t>(u)] = expo;
        G.unit_mask[static_cast<size_t>(u)] = 1;
        ++count;
        // Mixed-radix increment, maintaining u as the running product.
        size_t i = 0;
        for (; i < ng; ++i) {
            u = mulmod(u, G.gens[i], k);
            if (++expo[i] < G.orders[i]) break;
            // wrapped: u has absorbed gens[i]^orders[i] == 1 already
            expo[i] = 0;
        }
        if (i == ng) break;
    }
    if (count != G.phi)
        throw precision_error("unit_group: generator enumeration mismatch");
    // Residue 1 must map to the zero tuple (it does: first iteration).
    return G;
}

} // namespace latsum
