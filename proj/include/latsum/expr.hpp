#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "latsum/character.hpp"
#include "latsum/errors.hpp"
#include "latsum/lseries.hpp"
#include "latsum/rational.hpp"
#include "latsum/root_of_unity.hpp"
#include "latsum/sums.hpp"

namespace latsum {

// Expression AST for catalog formulas.  Leaves: exact rational numbers,
// roots of unity, sqrt(integer), s-dependent powers base^(a+b*s), L-series
// by label, and residual lattice sums Q[a,b,c] / S[p,r,j] / sig[p,r,j] /
// T[r].  Interior nodes: +, -, *, /, integer powers.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,   // num
        Root,     // root
        Sqrt,     // sqrt(arg_n)
        PowS,     // base^(pa + pb*s), exact rational pa, pb
        LFunc,    // L-series: signed modulus lk, superscript suffix lsup
        KL,       // (k,l) symbol: sum over (k n + l)^{-s}, k in lk, l in arg_n
        SumLeaf,  // residual lattice sum
        Add, Sub, Mul, Div,
        Pow       // kids[0] ^ int exponent (in arg_n)
    };
    Kind kind;
    Rational num;
    RootOfUnity root;
    long arg_n = 0;
    long base = 0;
    Rational pa, pb;
    long lk = 0;
    std::string lsup;
    SumSpec sum{QSpec{1, 0, 1}};
    std::vector<ExprPtr> kids;

    static ExprPtr number(Rational r) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Number;
        e->num = std::move(r);
        return e;
    }
    static ExprPtr node(Kind k, std::vector<ExprPtr> kids) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = std::move(kids);
        return e;
    }
};

// Evaluation context: fixed s, tolerance for residual direct sums, caches.
struct EvalContext {
    Complex s{2.0, 0.0};
    double direct_tol = 1e-7;   // relative tolerance for Q/S/sig leaves
    long max_radius = 2000000;
    bool used_direct = false;   // set when any Q/S/sig leaf was evaluated
    std::map<std::string, Complex> lcache;
    std::map<std::string, Complex> sumcache;
    std::map<const Expr*, Complex> nodecache;
};

namespace detail {

inline Complex eval_sum_leaf(const SumSpec& sp, EvalContext& ctx) {
    std::string key;
    if (auto* q = std::get_if<QSpec>(&sp))
        key = "Q:" + std::to_string(q->a) + "," + std::to_string(q->b) + "," +
              std::to_string(q->c);
    else if (auto* s = std::get_if<SSpec>(&sp))
        key = "S:" + std::to_string(s->p) + "," + std::to_string(s->r) + "," +
              std::to_string(s->j);
    else if (auto* g = std::get_if<SigmaSpec>(&sp))
        key = "G:" + std::to_string(g->p) + "," + std::to_string(g->r) + "," +
              std::to_string(g->j);
    else if (auto* t = std::get_if<TSpec>(&sp))
        key = "T:" + std::to_string(t->r);
    auto it = ctx.sumcache.find(key);
    if (it != ctx.sumcache.end()) return it->second;
    Complex v;
    if (auto* q = std::get_if<QSpec>(&sp)) {
        ctx.used_direct = true;
        v = q_sum(q->a, q->b, q->c, ctx.s, ctx.direct_tol, ctx.max_radius).value;
    } else if (auto* s = std::get_if<SSpec>(&sp)) {
        ctx.used_direct = true;
        v = s_sum(s->p, s->r, s->j, ctx.s, ctx.direct_tol, ctx.max_radius).value;
    } else if (auto* g = std::get_if<SigmaSpec>(&sp)) {
        ctx.used_direct = true;
        v = sigma_sum(g->p, g->r, g->j, ctx.s, ctx.direct_tol, ctx.max_radius)
                .value;
    } else {
        auto* t = std::get_if<TSpec>(&sp);
        v = t_via_kl(t->r, ctx.s);
    }
    ctx.sumcache.emplace(key, v);
    return v;
}

} // namespace detail

inline Complex eval(const ExprPtr& e, EvalContext& ctx) {
    auto it = ctx.nodecache.find(e.get());
    if (it != ctx.nodecache.end()) return it->second;
    Complex v;
    switch (e->kind) {
        case Expr::Kind::Number:
            v = Complex(to_double(e->num), 0.0);
            break;
        case Expr::Kind::Root:
            v = e->root.value();
            break;
        case Expr::Kind::Sqrt:
            v = Complex(std::sqrt(static_cast<double>(e->arg_n)), 0.0);
            break;
        case Expr::Kind::PowS: {
            Complex expo = Complex(to_double(e->pa), 0.0) +
                           to_double(e->pb) * ctx.s;
            v = std::exp(expo * std::log(static_cast<double>(e->base)));
            break;
        }
        case Expr::Kind::LFunc: {
            std::string label = "L_{" + std::to_string(e->lk) + "}";
            if (!e->lsup.empty()) label += "^{" + e->lsup + "}";
            auto lit = ctx.lcache.find(label);
            if (lit != ctx.lcache.end()) { v = lit->second; break; }
            v = l_series(character_by_label(label), ctx.s);
            ctx.lcache.emplace(label, v);
            break;
        }
        case Expr::Kind::KL:
            v = kl_symbol(e->lk, e->arg_n, ctx.s);
            break;
        case Expr::Kind::SumLeaf:
            v = detail::eval_sum_leaf(e->sum, ctx);
            break;
        case Expr::Kind::Add:
            v = eval(e->kids[0], ctx) + eval(e->kids[1], ctx);
            break;
        case Expr::Kind::Sub:
            v = eval(e->kids[0], ctx) - eval(e->kids[1], ctx);
            break;
        case Expr::Kind::Mul:
            v = eval(e->kids[0], ctx) * eval(e->kids[1], ctx);
            break;
        case Expr::Kind::Div:
            v = eval(e->kids[0], ctx) / eval(e->kids[1], ctx);
            break;
        case Expr::Kind::Pow: {
            Complex b = eval(e->kids[0], ctx);
            long n = e->arg_n;
            bool inv = n < 0;
            if (inv) n = -n;
            Complex acc = 1.0;
            while (n > 0) {
                if (n & 1) acc *= b;
                b *= b;
                n >>= 1;
            }
            v = inv ? 1.0 / acc : acc;
            break;
        }
        default:
            throw input_error("eval: bad node");
    }
    ctx.nodecache.emplace(e.get(), v);
    return v;
}

// True if the expression contains a Q/S/sig leaf (forcing the direct route).
inline bool has_direct_leaf(const ExprPtr& e) {
    if (e->kind == Expr::Kind::SumLeaf)
        return !std::holds_alternative<TSpec>(e->sum);
    for (const auto& k : e->kids)
        if (has_direct_leaf(k)) return true;
    return false;
}

inline bool has_sum_leaf(const ExprPtr& e) {
    if (e->kind == Expr::Kind::SumLeaf) return true;
    for (const auto& k : e->kids)
        if (has_sum_leaf(k)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Parser.  Definitions (named sub-expressions) may be supplied for tokens
// that are plain identifiers.
//
//   expr     := ['+'|'-'] term { ('+'|'-') term }
//   term     := factor { ('*'|'/') factor }
//   factor   := atom [ '^' exponent ]
//   exponent := integer | '(' linear-in-s ')'
//   atom     := integer | '(' expr ')' | 'sqrt' '(' integer ')'
//            | 'i' | 'w' | 'tau' | 'phi'      (roots of unity; powers via ^)
//            | 'L' '[' k [',' sup] ']' | 'kl' '[' k ',' l ']'
//            | 'Q' '[' a ',' b ',' c ']' | 'S' '[' p ',' r ',' j ']'
//            | 'sig' '[' p ',' r ',' j ']' | 'T' '[' r ']'
//            | identifier                     (bound by the defs table)
// ---------------------------------------------------------------------------
class ExprParser {
  public:
    explicit ExprParser(std::string text,
                        const std::map<std::string, ExprPtr>* defs = nullptr)
        : text_(std::move(text)), defs_(defs) {}

    ExprPtr parse() {
        pos_ = 0;
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw input_error("expression: trailing input at '" +
                              text_.substr(pos_) + "'");
        return e;
    }

  private:
    std::string text_;
    const std::map<std::string, ExprPtr>* defs_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c) {
        if (!eat(c))
            throw input_error(std::string("expression: expected '") + c +
                              "' near '" + text_.substr(pos_) + "'");
    }

    long parse_integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw input_error("expression: integer expected near '" +
                              text_.substr(start) + "'");
        long v = std::stol(text_.substr(start, pos_ - start));
        return neg ? -v : v;
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    // Rational coefficient: "3", "1/2" are handled at the term level by
    // division, so linear parts only need integers here.
    // linear-in-s := part { ('+'|'-') part },  part := n | n*s | s
    void parse_linear(Rational& a, Rational& b) {
        a = 0;
        b = 0;
        int sign = 1;
        skip_ws();
        if (eat('-')) sign = -1;
        else eat('+');
        while (true) {
            skip_ws();
            if (peek() == 's') {
                ++pos_;
                b += sign;
            } else {
                long n = parse_integer();
                skip_ws();
                if (eat('*')) {
                    skip_ws();
                    if (peek() == 's') {
                        ++pos_;
                        b += Rational(sign) * n;
                    } else
                        throw input_error("linear exponent: expected s");
                } else if (eat('/')) {
                    long d = parse_integer();
                    Rational r(n, d);
                    skip_ws();
                    if (eat('*')) {
                        expect('s');
                        b += Rational(sign) * r;
                    } else
                        a += Rational(sign) * r;
                } else
                    a += Rational(sign) * n;
            }
            skip_ws();
            if (eat('-')) sign = -1;
            else if (eat('+')) sign = 1;
            else break;
        }
    }

    ExprPtr parse_expr() {
        skip_ws();
        bool lead_neg = false;
        if (eat('-')) lead_neg = true;
        else eat('+');
        ExprPtr e = parse_term();
        if (lead_neg)
            e = Expr::node(Expr::Kind::Sub,
                           {Expr::number(Rational(0)), e});
        while (true) {
            if (eat('+')) e = Expr::node(Expr::Kind::Add, {e, parse_term()});
            else if (eat('-'))
                e = Expr::node(Expr::Kind::Sub, {e, parse_term()});
            else break;
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (true) {
            if (eat('*')) e = Expr::node(Expr::Kind::Mul, {e, parse_factor()});
            else if (eat('/'))
                e = Expr::node(Expr::Kind::Div, {e, parse_factor()});
            else break;
        }
        return e;
    }

    ExprPtr parse_factor() {
        ExprPtr a = parse_atom();
        skip_ws();
        if (!eat('^')) return a;
        skip_ws();
        if (peek() == '(') {
            expect('(');
            Rational pa, pb;
            parse_linear(pa, pb);
            expect(')');
            if (pb == 0) {
                // constant exponent after all
                if (denominator(pa) != 1)
                    throw input_error("expression: fractional constant exponent");
                long n = numerator(pa).convert_to<long>();
                if (a->kind == Expr::Kind::Number)
                    return Expr::number(pow_rational(a->num, n));
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Pow;
                e->kids = {a};
                e->arg_n = n;
                return e;
            }
            if (a->kind != Expr::Kind::Number || denominator(a->num) != 1)
                throw input_error("expression: s-exponent base must be integer");
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::PowS;
            e->base = numerator(a->num).convert_to<long>();
            if (e->base < 1)
                throw input_error("expression: s-exponent base must be >= 1");
            e->pa = pa;
            e->pb = pb;
            return e;
        }
        long n = parse_integer();
        if (a->kind == Expr::Kind::Number)
            return Expr::number(pow_rational(a->num, n));
        if (a->kind == Expr::Kind::Root) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Root;
            e->root = a->root.pow(n);
            return e;
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Pow;
        e->kids = {a};
        e->arg_n = n;
        return e;
    }

    ExprPtr parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            expect('(');
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Expr::number(Rational(parse_integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id = parse_ident();
            if (id == "sqrt") {
                expect('(');
                long n = parse_integer();
                expect(')');
                if (n < 0) throw input_error("sqrt of negative integer");
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Sqrt;
                e->arg_n = n;
                return e;
            }
            if (id == "i" || id == "w" || id == "tau" || id == "phi") {
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Root;
                if (id == "i") e->root = RootOfUnity::from_exponent(1, 4);
                else if (id == "w") e->root = RootOfUnity::from_exponent(1, 6);
                else if (id == "tau")
                    e->root = RootOfUnity::from_exponent(1, 10);
                else e->root = RootOfUnity::from_exponent(1, 12);
                return e;
            }
            if (id == "L" && peek() == '[') {
                expect('[');
                long k = parse_integer();
                std::string sup;
                if (eat(',')) {
                    skip_ws();
                    size_t start = pos_;
                    while (pos_ < text_.size() && text_[pos_] != ']')
                        ++pos_;
                    sup = text_.substr(start, pos_ - start);
                    while (!sup.empty() && sup.back() == ' ') sup.pop_back();
                }
                expect(']');
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::LFunc;
                e->lk = k;
                e->lsup = sup;
                return e;
            }
            if (id == "kl" && peek() == '[') {
                expect('[');
                long k = parse_integer();
                expect(',');
                long l = parse_integer();
                expect(']');
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::KL;
                e->lk = k;
                e->arg_n = l;
                return e;
            }
            if ((id == "Q" || id == "S" || id == "sig") && peek() == '[') {
                expect('[');
                long x = parse_integer();
                expect(',');
                long y = parse_integer();
                expect(',');
                long z = parse_integer();
                expect(']');
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::SumLeaf;
                if (id == "Q") e->sum = QSpec{x, y, z};
                else if (id == "S") e->sum = SSpec{x, y, z};
                else e->sum = SigmaSpec{x, y, z};
                return e;
            }
            if (id == "T" && peek() == '[') {
                expect('[');
                long r = parse_integer();
                expect(']');
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::SumLeaf;
                e->sum = TSpec{r};
                return e;
            }
            if (defs_) {
                auto it = defs_->find(id);
                if (it != defs_->end()) return it->second;
            }
            throw input_error("expression: unknown identifier '" + id + "'");
        }
        throw input_error(std::string("expression: unexpected character '") +
                          c + "'");
    }
};

inline ExprPtr parse_expr(const std::string& text,
                          const std::map<std::string, ExprPtr>* defs = nullptr) {
    return ExprParser(text, defs).parse();
}

} // namespace latsum
