#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/root_of_unity.hpp"
#include "latsum/unit_group.hpp"

namespace latsum {

// Kronecker symbol (a|b), extending Jacobi to all integers b.
inline int kronecker(long a, long b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int r = 1;
    if (b < 0) {
        b = -b;
        if (a < 0) r = -r;
    }
    int v = 0;
    while ((b & 1) == 0) { b >>= 1; ++v; }
    if (v & 1) {
        long am8 = ((a % 8) + 8) % 8;   // (a|2) = 0,+1,-1 for a = even, ±1, ±3 mod 8
        if (am8 == 3 || am8 == 5) r = -r;
    }
    a %= b;
    if (a < 0) a += b;
    while (a != 0) {
        int v2 = 0;
        while ((a & 1) == 0) { a >>= 1; ++v2; }
        if (v2 & 1) {
            long bm8 = b % 8;
            if (bm8 == 3 || bm8 == 5) r = -r;
        }
        if ((a & 3) == 3 && (b & 3) == 3) r = -r;
        long t = b % a;
        b = a;
        a = t;
    }
    return b == 1 ? r : 0;
}

enum class Parity { Positive, Negative }; // chi(-1) = +1 / -1

class DirichletCharacter {
  public:
    DirichletCharacter() = default;
    DirichletCharacter(long k, std::vector<RootOfUnity> vals)
        : k_(k), vals_(std::move(vals)) {
        finish();
    }

    long modulus() const { return k_; }
    long conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == k_; }
    bool is_principal() const { return conductor_ == 1; }
    bool is_real() const { return real_; }
    Parity parity() const { return parity_; }
    int parity_sign() const { return parity_ == Parity::Positive ? 1 : -1; }

    // Order of chi in the character group = lcm of value orders.
    long order() const { return order_; }

    const RootOfUnity& at(long n) const {
        n %= k_;
        if (n < 0) n += k_;
        return vals_[static_cast<size_t>(n)];
    }
    const std::vector<RootOfUnity>& values() const { return vals_; }

    // First non-real value chi(n), scanning n = 2, 3, ...; zero root if real.
    const RootOfUnity& superscript() const { return sup_; }

    // Display label: "L_{1}", "L_{-4}", "L_{-5}^{i}", or the Euler-prefactor
    // form for imprimitive characters, e.g. "(1-2^{-s})L_{1}".
    const std::string& label() const { return label_; }

    // Label of the primitive character inducing this one (== label() when
    // primitive, minus any prefactors otherwise).
    const std::string& primitive_label() const { return prim_label_; }

    bool operator==(const DirichletCharacter& o) const {
        return k_ == o.k_ && vals_ == o.vals_;
    }

  private:
    long k_ = 1;
    std::vector<RootOfUnity> vals_{RootOfUnity::one()};
    Parity parity_ = Parity::Positive;
    long conductor_ = 1;
    long order_ = 1;
    bool real_ = true;
    RootOfUnity sup_ = RootOfUnity::zero();
    std::string label_ = "L_{1}";
    std::string prim_label_ = "L_{1}";

    void finish();
    friend std::vector<DirichletCharacter> enumerate_characters(long k);
};

inline std::vector<DirichletCharacter> enumerate_characters(long k);

namespace detail {

// Ambient order used to render superscripts of characters mod k: the
// exponent lambda(k) of the unit group, made even.
inline unsigned ambient_order(long k) {
    long lam = unit_group(k).lambda;
    if (lam % 2 != 0) lam *= 2;
    return static_cast<unsigned>(lam);
}

inline std::string prefactor_string(long p, const RootOfUnity& chi_p) {
    // Render (1 - chi*(p) p^{-s}).
    std::string coef;
    bool flip = false;
    if (chi_p.is_one()) coef = "";
    else if (chi_p.is_minus_one()) { coef = ""; flip = true; }
    else {
        RootOfUnity c = chi_p;
        std::string cs = c.str();
        if (!cs.empty() && cs[0] == '-') { flip = true; cs.erase(0, 1); }
        coef = cs;
        if (coef.size() > 1) coef = "(" + coef + ")"; // e.g. (w2)
    }
    return "(1" + std::string(flip ? "+" : "-") + coef +
           std::to_string(p) + "^{-s})";
}

} // namespace detail

inline void DirichletCharacter::finish() {
    if (k_ < 1 || static_cast<long>(vals_.size()) != k_)
        throw input_error("DirichletCharacter: bad value table");

    real_ = true;
    sup_ = RootOfUnity::zero();
    order_ = 1;
    for (long n = 2; n < k_; ++n) {
        const RootOfUnity& v = vals_[static_cast<size_t>(n)];
        if (v.is_zero()) continue;
        order_ = std::lcm<long>(order_, v.order());
        if (!v.is_real() && sup_.is_zero()) {
            sup_ = v;
            real_ = false;
        }
    }

    parity_ = Parity::Positive;
    if (k_ > 2 && vals_[static_cast<size_t>(k_ - 1)].is_minus_one())
        parity_ = Parity::Negative;

    // Conductor: smallest divisor d of k with chi trivial on units = 1 mod d.
    conductor_ = k_;
    for (long d = 1; d <= k_; ++d) {
        if (k_ % d != 0) continue;
        bool ok = true;
        for (long n = 1; n < k_ && ok; ++n) {
            if (vals_[static_cast<size_t>(n)].is_zero()) continue;
            if (n % d == 1 % d && !vals_[static_cast<size_t>(n)].is_one()) ok = false;
        }
        if (ok) { conductor_ = d; break; }
    }
    if (k_ == 1) conductor_ = 1;

    // Labels.
    unsigned amb = detail::ambient_order(conductor_ == 1 ? k_ : conductor_);
    long signed_f = parity_ == Parity::Positive ? conductor_ : -conductor_;
    if (conductor_ == 1) signed_f = 1;
    prim_label_ = "L_{" + std::to_string(signed_f) + "}";
    if (!real_) prim_label_ += "^{" + sup_.str(amb) + "}";

    if (is_primitive() || k_ == 1) {
        label_ = prim_label_;
        return;
    }

    // Imprimitive: label of the inducing primitive character with Euler
    // prefactors over primes dividing k but not the conductor.  The inducing
    // character is found among the primitive characters mod conductor.
    std::vector<DirichletCharacter> cands = enumerate_characters(conductor_);
    const DirichletCharacter* star = nullptr;
    for (const auto& c : cands) {
        if (!c.is_primitive() && conductor_ != 1) continue;
        bool match = true;
        for (long n = 1; n < k_ && match; ++n) {
            if (vals_[static_cast<size_t>(n)].is_zero()) continue;
            if (!(c.at(n) == vals_[static_cast<size_t>(n)])) match = false;
        }
        if (match) { star = &c; break; }
    }
    if (!star)
        throw precision_error("inducing primitive character not found");
    prim_label_ = star->label();

    std::string pre;
    for (auto [p, e] : factorize(k_)) {
        (void)e;
        if (conductor_ % p == 0) continue;
        pre += detail::prefactor_string(p, star->at(p));
    }
    label_ = pre + prim_label_;
    sup_ = star->sup_; // superscript of the inducing character
}

inline std::vector<DirichletCharacter> enumerate_characters(long k) {
    if (k < 1 || k > 100000)
        throw input_error("enumerate_characters: modulus out of range");
    UnitGroup G = unit_group(k);
    size_t ng = G.gens.size();
    long M = G.lambda;

    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<size_t>(G.phi));

    std::vector<int> c(ng, 0); // chi(gens[i]) = exp(2 pi i c[i]/orders[i])
    while (true) {
        std::vector<RootOfUnity> vals(static_cast<size_t>(k),
                                      RootOfUnity::zero());
        for (long n = 0; n < k; ++n) {
            if (!G.unit_mask[static_cast<size_t>(n)]) continue;
            const auto& t = G.dlog[static_cast<size_t>(n)];
            long e = 0;
            for (size_t i = 0; i < ng; ++i)
                e += static_cast<long>(c[i]) * t[i] * (M / G.orders[i]);
            vals[static_cast<size_t>(n)] = RootOfUnity::from_exponent(e, M);
        }
        if (k == 1) vals[0] = RootOfUnity::one();
        out.emplace_back(k, std::move(vals));

        size_t i = 0;
        for (; i < ng; ++i) {
            if (++c[i] < G.orders[i]) break;
            c[i] = 0;
        }
        if (i == ng) break;
    }

    // Positive parity first, then real before complex; complex characters
    // by superscript turn fraction (i before -i, w before w2 before -w);
    // label string as the final tiebreak.
    std::sort(out.begin(), out.end(),
              [](const DirichletCharacter& a, const DirichletCharacter& b) {
                  auto key = [](const DirichletCharacter& x) {
                      const RootOfUnity& r = x.superscript();
                      double frac =
                          r.is_zero() ? -1.0
                                      : static_cast<double>(r.exponent()) /
                                            static_cast<double>(r.order());
                      return std::make_tuple(x.parity() != Parity::Positive,
                                             !x.is_real(), frac, x.label());
                  };
                  return key(a) < key(b);
              });
    return out;
}

// The real primitive character given by the Kronecker symbol (d|n), d a
// fundamental discriminant (or d=1).  Used as an oracle/constructor.
inline DirichletCharacter kronecker_character(long d) {
    long k = std::labs(d);
    if (k == 0) throw input_error("kronecker_character: d = 0");
    std::vector<RootOfUnity> vals(static_cast<size_t>(k), RootOfUnity::zero());
    for (long n = 0; n < k; ++n) {
        int v = kronecker(d, n);
        if (v == 1) vals[static_cast<size_t>(n)] = RootOfUnity::one();
        else if (v == -1) vals[static_cast<size_t>(n)] = RootOfUnity::minus_one();
    }
    if (k == 1) vals[0] = RootOfUnity::one();
    return DirichletCharacter(k, vals);
}

// Parse "L_{-5}^{i}" / "L_{-5}^i" / "L_{12}" / "L[12]" / "L[-5,i]" into the
// matching primitive character (principal for |k| = 1).
inline DirichletCharacter character_by_label(const std::string& label) {
    std::string s;
    for (char ch : label)
        if (ch != '{' && ch != '}' && ch != ' ') s += ch;
    if (s.size() < 3 || s[0] != 'L')
        throw input_error("bad label: " + label);
    std::string body;
    if (s[1] == '_') body = s.substr(2);
    else if (s[1] == '[' && s.back() == ']') {
        body = s.substr(2, s.size() - 3);
        auto comma = body.find(',');
        if (comma != std::string::npos) body[comma] = '^';
    } else
        throw input_error("bad label: " + label);

    std::string kpart = body, sup;
    auto caret = body.find('^');
    if (caret != std::string::npos) {
        kpart = body.substr(0, caret);
        sup = body.substr(caret + 1);
    }
    long sk = 0;
    try {
        sk = std::stol(kpart);
    } catch (...) {
        throw input_error("bad label modulus: " + label);
    }
    long k = std::labs(sk);
    if (k == 0) throw input_error("bad label modulus: " + label);
    Parity want = sk > 0 ? Parity::Positive : Parity::Negative;
    RootOfUnity want_sup =
        sup.empty() ? RootOfUnity::zero() : parse_root_suffix(sup);

    for (const auto& chi : enumerate_characters(k)) {
        if (k > 1 && !chi.is_primitive()) continue;
        if (chi.parity() != want) continue;
        if (sup.empty()) {
            if (!chi.is_real()) continue;
        } else {
            if (chi.is_real() || !(chi.superscript() == want_sup)) continue;
        }
        return chi;
    }
    throw input_error("no primitive character matches label " + label);
}

} // namespace latsum
