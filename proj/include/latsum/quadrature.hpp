#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "latsum/errors.hpp"

namespace latsum {

namespace detail {

// Gauss–Legendre nodes/weights on [-1, 1], computed once by Newton on the
// Legendre recurrence.
inline const std::vector<std::pair<double, double>>& gl_nodes(int n) {
    // thread_local: verification tasks may run concurrently; recomputing a
    // node set per thread is cheaper than locking.
    static thread_local std::vector<std::vector<std::pair<double, double>>>
        cache(65);
    if (n < 2 || n > 64) throw input_error("gl_nodes: order out of range");
    auto& slot = cache[static_cast<size_t>(n)];
    if (!slot.empty()) return slot;
    std::vector<std::pair<double, double>> nw(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw[static_cast<size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    slot = std::move(nw);
    return slot;
}

template <class F>
std::complex<double> gl_panel(F&& f, double lo, double hi, int n) {
    const auto& nw = gl_nodes(n);
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    std::complex<double> acc = 0.0;
    for (const auto& [x, w] : nw) acc += w * f(mid + hw * x);
    return hw * acc;
}

// Adaptive bisection: accept a panel when the n and 2n-ish (two-half) results
// agree to the local absolute tolerance.
template <class F>
std::complex<double> adaptive_gl(F&& f, double lo, double hi, double abs_tol,
                                 int order, int max_depth,
                                 std::uint64_t& evals, std::uint64_t budget) {
    struct Seg {
        double lo, hi, tol;
        int depth;
    };
    std::vector<Seg> stack{{lo, hi, abs_tol, 0}};
    std::complex<double> total = 0.0;
    while (!stack.empty()) {
        Seg sg = stack.back();
        stack.pop_back();
        evals += static_cast<std::uint64_t>(3 * order);
        if (evals > budget)
            throw quadrature_error("adaptive_gl: evaluation budget exhausted");
        double mid = 0.5 * (sg.lo + sg.hi);
        auto whole = gl_panel(f, sg.lo, sg.hi, order);
        auto half = gl_panel(f, sg.lo, mid, order) +
                    gl_panel(f, mid, sg.hi, order);
        if (std::abs(whole - half) <= sg.tol || sg.depth >= max_depth) {
            if (sg.depth >= max_depth && std::abs(whole - half) > 8 * sg.tol)
                throw quadrature_error("adaptive_gl: max depth exceeded");
            total += half;
        } else {
            stack.push_back({sg.lo, mid, 0.5 * sg.tol, sg.depth + 1});
            stack.push_back({mid, sg.hi, 0.5 * sg.tol, sg.depth + 1});
        }
    }
    return total;
}

} // namespace detail

struct QuadratureSpec {
    int order = 20;           // Gauss–Legendre points per panel
    double rel_tol = 1e-9;    // target relative accuracy of the integral
    int max_depth = 30;
    std::uint64_t budget = 80000000; // max integrand evaluations
};

} // namespace latsum
