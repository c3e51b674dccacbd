#pragma once

#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "latsum/errors.hpp"

namespace latsum {

// Exact root of unity exp(2*pi*i*e/m), stored in lowest terms, plus a
// distinguished exact zero (the value Dirichlet characters take on
// non-invertible residues).  All arithmetic stays in Z/m — no floating
// point until value() is called.
class RootOfUnity {
  public:
    RootOfUnity() : zero_(true), e_(0), m_(1) {}

    static RootOfUnity zero() { return RootOfUnity(); }
    static RootOfUnity one() { return from_exponent(0, 1); }
    static RootOfUnity minus_one() { return from_exponent(1, 2); }

    // exp(2*pi*i*e/m), any integers, m != 0; reduced mod m and by gcd.
    static RootOfUnity from_exponent(long e, long m) {
        if (m == 0) throw input_error("RootOfUnity: zero order");
        if (m < 0) { m = -m; e = -e; }
        e %= m;
        if (e < 0) e += m;
        long g = std::gcd(e, m);
        if (e == 0) g = m;
        RootOfUnity r;
        r.zero_ = false;
        r.e_ = static_cast<unsigned>(e / g);
        r.m_ = static_cast<unsigned>(m / g);
        return r;
    }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && m_ == 1; }
    bool is_minus_one() const { return !zero_ && m_ == 2; }
    bool is_real() const { return zero_ || m_ <= 2; }

    // Reduced numerator/denominator of the turn fraction e/m.
    unsigned exponent() const { return e_; }
    unsigned order() const { return zero_ ? 0 : m_; }

    // +1 / -1 / 0 for real values; input_error otherwise.
    int sign_if_real() const {
        if (zero_) return 0;
        if (m_ == 1) return 1;
        if (m_ == 2) return -1;
        throw input_error("sign_if_real on a non-real root of unity");
    }

    RootOfUnity operator*(const RootOfUnity& o) const {
        if (zero_ || o.zero_) return zero();
        long m = std::lcm<long>(m_, o.m_);
        return from_exponent(static_cast<long>(e_) * (m / m_) +
                                 static_cast<long>(o.e_) * (m / o.m_),
                             m);
    }

    RootOfUnity pow(long k) const {
        if (zero_) return zero();
        long r = static_cast<long>(e_) * (k % static_cast<long>(m_));
        return from_exponent(r, static_cast<long>(m_));
    }

    RootOfUnity conj() const {
        if (zero_) return zero();
        return from_exponent(-static_cast<long>(e_), static_cast<long>(m_));
    }

    std::complex<double> value() const {
        if (zero_) return {0.0, 0.0};
        if (m_ == 1) return {1.0, 0.0};
        if (m_ == 2) return {-1.0, 0.0};
        if (m_ == 4) return e_ == 1 ? std::complex<double>(0.0, 1.0)
                                    : std::complex<double>(0.0, -1.0);
        double th = 2.0 * std::numbers::pi * static_cast<double>(e_) / m_;
        return {std::cos(th), std::sin(th)};
    }

    bool operator==(const RootOfUnity&) const = default;

    // Order by turn fraction, zero last.
    bool operator<(const RootOfUnity& o) const {
        if (zero_ != o.zero_) return !zero_;
        if (zero_) return false;
        return static_cast<long>(e_) * o.m_ < static_cast<long>(o.e_) * m_;
    }

    // Compact ASCII form relative to an ambient even order M (the base root
    // letter is chosen by M): 1, -1, i, -i, w (=exp(2pi i/6)), t (order 10),
    // f (order 12), else zM.  Powers are written without a caret: w2, -t3.
    std::string str(unsigned ambient = 0) const {
        if (zero_) return "0";
        if (m_ == 1) return "1";
        if (m_ == 2) return "-1";
        unsigned M = ambient;
        if (M == 0 || M % m_ != 0) M = (m_ % 2 == 0) ? m_ : 2 * m_;
        if (M % 2 != 0) M *= 2;
        unsigned t = e_ * (M / m_);
        bool neg = t > M / 2;
        if (neg) t -= M / 2;
        std::string base;
        switch (M) {
            case 4: base = "i"; break;
            case 6: base = "w"; break;
            case 10: base = "t"; break;
            case 12: base = "f"; break;
            default: base = "z" + std::to_string(M); break;
        }
        std::string out = neg ? "-" : "";
        out += base;
        if (t != 1) out += std::to_string(t);
        return out;
    }

  private:
    bool zero_;
    unsigned e_, m_; // exp(2*pi*i*e/m), gcd(e,m)=1, 0 <= e < m
};

// Inverse of RootOfUnity::str for the compact suffix forms: "1", "-1", "i",
// "-i", "w2", "-t3", "f4", "z16", "-z16_5" is not used — zM powers are
// "z16" base with trailing digits ("z163" would be ambiguous, so powers of
// zM use '^': "z16^3").  Parsing is ambient-independent: w2 always means
// exp(2*pi*i*2/6) = exp(2*pi*i/3).
inline RootOfUnity parse_root_suffix(const std::string& in) {
    std::string s = in;
    bool neg = false;
    if (!s.empty() && s[0] == '-') { neg = true; s.erase(0, 1); }
    if (s.empty()) throw input_error("empty root-of-unity token");
    if (s == "1") return neg ? RootOfUnity::minus_one() : RootOfUnity::one();
    long base_order;
    size_t pos = 1;
    switch (s[0]) {
        case 'i': base_order = 4; break;
        case 'w': base_order = 6; break;
        case 't': base_order = 10; break;
        case 'f': base_order = 12; break;
        case 'z': {
            size_t end = 1;
            while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
            if (end == 1) throw input_error("bad root token: " + in);
            base_order = std::stol(s.substr(1, end - 1));
            pos = end;
            if (pos < s.size() && s[pos] == '^') ++pos;
            break;
        }
        default: throw input_error("bad root token: " + in);
    }
    long p = 1;
    if (pos < s.size()) {
        for (size_t i = pos; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw input_error("bad root token: " + in);
        p = std::stol(s.substr(pos));
    }
    RootOfUnity r = RootOfUnity::from_exponent(p, base_order);
    if (neg) r = r * RootOfUnity::minus_one();
    return r;
}

} // namespace latsum
