#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "clsym/errors.hpp"

namespace clsym {

using Complex = std::complex<double>;

// Node kinds in canonical sort order. Sums and products store their children
// sorted by this order so that structurally equal trees compare equal.
enum class NodeKind : std::uint8_t { Constant, Variable, Power, Product, Quotient, Apply, Sum };

enum class Builtin : std::uint8_t { Sin, Cos, Tan, Sinh, Cosh, Exp, Log, Sqrt, Atan };

inline const char* builtin_name(Builtin f) {
    switch (f) {
        case Builtin::Sin: return "sin";
        case Builtin::Cos: return "cos";
        case Builtin::Tan: return "tan";
        case Builtin::Sinh: return "sinh";
        case Builtin::Cosh: return "cosh";
        case Builtin::Exp: return "exp";
        case Builtin::Log: return "log";
        case Builtin::Sqrt: return "sqrt";
        case Builtin::Atan: return "atan";
    }
    return "?";
}

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable expression tree node. Trees are built through the canonicalizing
// factories below and shared freely; nothing mutates a node after creation.
class ExprNode {
public:
    NodeKind kind;
    Complex value{};            // Constant
    std::string name;           // Variable
    Builtin fn{Builtin::Sin};   // Apply
    long long exponent = 0;     // Power (integer exponents only)
    std::vector<Expr> kids;     // Sum/Product children, Power base, Quotient num/den, Apply arg

    explicit ExprNode(NodeKind k) : kind(k) {}
};

// ---------------------------------------------------------------------------
// Ordering and structural equality

inline int compare(const Expr& a, const Expr& b);

inline int compare_children(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a[i], b[i])) return c;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

inline int compare(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case NodeKind::Constant: {
            if (a->value.real() != b->value.real()) return a->value.real() < b->value.real() ? -1 : 1;
            if (a->value.imag() != b->value.imag()) return a->value.imag() < b->value.imag() ? -1 : 1;
            return 0;
        }
        case NodeKind::Variable:
            return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
        case NodeKind::Power: {
            if (int c = compare(a->kids[0], b->kids[0])) return c;
            if (a->exponent != b->exponent) return a->exponent < b->exponent ? -1 : 1;
            return 0;
        }
        case NodeKind::Apply: {
            if (a->fn != b->fn) return a->fn < b->fn ? -1 : 1;
            return compare(a->kids[0], b->kids[0]);
        }
        case NodeKind::Product:
        case NodeKind::Sum:
        case NodeKind::Quotient:
            return compare_children(a->kids, b->kids);
    }
    return 0;
}

inline bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Canonicalizing factories

inline double normalize_zero(double v) { return v == 0.0 ? 0.0 : v; }

inline Expr num(Complex v) {
    auto n = std::make_shared<ExprNode>(NodeKind::Constant);
    n->value = Complex(normalize_zero(v.real()), normalize_zero(v.imag()));
    return n;
}

inline Expr num(double v) { return num(Complex(v, 0.0)); }

inline Expr imaginary_unit() { return num(Complex(0.0, 1.0)); }

inline Expr var(std::string name) {
    auto n = std::make_shared<ExprNode>(NodeKind::Variable);
    n->name = std::move(name);
    return n;
}

inline bool is_constant(const Expr& e) { return e->kind == NodeKind::Constant; }

inline bool is_constant(const Expr& e, Complex v) {
    return e->kind == NodeKind::Constant && e->value == v;
}

inline bool is_zero(const Expr& e) { return is_constant(e, Complex(0.0, 0.0)); }
inline bool is_one(const Expr& e) { return is_constant(e, Complex(1.0, 0.0)); }

inline Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Complex c(0.0, 0.0);
    for (auto& t : terms) {
        if (t->kind == NodeKind::Sum) {
            for (auto& k : t->kids) {
                if (is_constant(k)) c += k->value; else flat.push_back(k);
            }
        } else if (is_constant(t)) {
            c += t->value;
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != Complex(0.0, 0.0)) flat.push_back(num(c));
    if (flat.empty()) return num(0.0);
    std::stable_sort(flat.begin(), flat.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<ExprNode>(NodeKind::Sum);
    n->kids = std::move(flat);
    return n;
}

inline Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Complex c(1.0, 0.0);
    for (auto& t : factors) {
        if (t->kind == NodeKind::Product) {
            for (auto& k : t->kids) {
                if (is_constant(k)) c *= k->value; else flat.push_back(k);
            }
        } else if (is_constant(t)) {
            c *= t->value;
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c == Complex(0.0, 0.0)) return num(0.0);
    if (flat.empty()) return num(c);
    std::stable_sort(flat.begin(), flat.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (c != Complex(1.0, 0.0)) flat.insert(flat.begin(), num(c));
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<ExprNode>(NodeKind::Product);
    n->kids = std::move(flat);
    return n;
}

inline Expr quotient(Expr numr, Expr den) {
    if (is_constant(den) && den->value != Complex(0.0, 0.0)) {
        if (is_constant(numr)) return num(numr->value / den->value);
        if (is_one(den)) return numr;
        return product({num(Complex(1.0, 0.0) / den->value), std::move(numr)});
    }
    if (is_zero(numr) && !is_constant(den)) return num(0.0);
    auto n = std::make_shared<ExprNode>(NodeKind::Quotient);
    n->kids = {std::move(numr), std::move(den)};
    return n;
}

inline Expr pow_int(Expr base, long long e) {
    if (e == 0) return num(1.0);
    if (e == 1) return base;
    if (std::llabs(e) > 4096) throw Error("power exponent out of range");
    if (is_constant(base)) {
        Complex b = base->value;
        if (!(e < 0 && b == Complex(0.0, 0.0))) {
            Complex acc(1.0, 0.0);
            Complex p = b;
            long long k = std::llabs(e);
            while (k) {
                if (k & 1) acc *= p;
                p *= p;
                k >>= 1;
            }
            if (e < 0) acc = Complex(1.0, 0.0) / acc;
            if (std::isfinite(acc.real()) && std::isfinite(acc.imag())) return num(acc);
        }
    }
    if (base->kind == NodeKind::Power) {
        long long combined = base->exponent * e;
        if (std::llabs(combined) <= 4096) return pow_int(base->kids[0], combined);
    }
    auto n = std::make_shared<ExprNode>(NodeKind::Power);
    n->kids = {std::move(base)};
    n->exponent = e;
    return n;
}

inline Complex eval_builtin(Builtin f, Complex w) {
    switch (f) {
        case Builtin::Sin: return std::sin(w);
        case Builtin::Cos: return std::cos(w);
        case Builtin::Tan: return std::sin(w) / std::cos(w);
        case Builtin::Sinh: return std::sinh(w);
        case Builtin::Cosh: return std::cosh(w);
        case Builtin::Exp: return std::exp(w);
        case Builtin::Log: return std::log(w);
        case Builtin::Sqrt: return std::sqrt(w);
        case Builtin::Atan: return std::atan(w);
    }
    return w;
}

inline Expr apply(Builtin f, Expr arg) {
    if (is_constant(arg)) {
        bool safe = true;
        if (f == Builtin::Log && arg->value == Complex(0.0, 0.0)) safe = false;
        if (f == Builtin::Tan) {
            if (std::abs(std::cos(arg->value)) == 0.0) safe = false;
        }
        if (safe) {
            Complex v = eval_builtin(f, arg->value);
            if (std::isfinite(v.real()) && std::isfinite(v.imag())) return num(v);
        }
    }
    auto n = std::make_shared<ExprNode>(NodeKind::Apply);
    n->fn = f;
    n->kids = {std::move(arg)};
    return n;
}

inline Expr neg(Expr e) { return product({num(-1.0), std::move(e)}); }

inline Expr sub(Expr a, Expr b) { return sum({std::move(a), neg(std::move(b))}); }

// Convenience operators; these make symbolic formulas read like the math.
inline Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator+(double a, const Expr& b) { return sum({num(a), b}); }
inline Expr operator+(const Expr& a, double b) { return sum({a, num(b)}); }
inline Expr operator-(double a, const Expr& b) { return sub(num(a), b); }
inline Expr operator-(const Expr& a, double b) { return sub(a, num(b)); }
inline Expr operator*(double a, const Expr& b) { return product({num(a), b}); }
inline Expr operator*(const Expr& a, double b) { return product({a, num(b)}); }
inline Expr operator/(double a, const Expr& b) { return quotient(num(a), b); }
inline Expr operator/(const Expr& a, double b) { return quotient(a, num(b)); }

// ---------------------------------------------------------------------------
// Variable queries and substitution

inline void collect_free_vars(const Expr& e, std::set<std::string>& out) {
    if (e->kind == NodeKind::Variable) {
        out.insert(e->name);
        return;
    }
    for (const auto& k : e->kids) collect_free_vars(k, out);
}

inline std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    collect_free_vars(e, out);
    return out;
}

inline bool depends_on(const Expr& e, const std::string& name) {
    if (e->kind == NodeKind::Variable) return e->name == name;
    for (const auto& k : e->kids) {
        if (depends_on(k, name)) return true;
    }
    return false;
}

inline Expr subst(const Expr& e, const std::map<std::string, Expr>& repl) {
    switch (e->kind) {
        case NodeKind::Constant: return e;
        case NodeKind::Variable: {
            auto it = repl.find(e->name);
            return it == repl.end() ? e : it->second;
        }
        case NodeKind::Power: return pow_int(subst(e->kids[0], repl), e->exponent);
        case NodeKind::Apply: return apply(e->fn, subst(e->kids[0], repl));
        case NodeKind::Quotient: return quotient(subst(e->kids[0], repl), subst(e->kids[1], repl));
        case NodeKind::Product: {
            std::vector<Expr> ks;
            ks.reserve(e->kids.size());
            for (const auto& k : e->kids) ks.push_back(subst(k, repl));
            return product(std::move(ks));
        }
        case NodeKind::Sum: {
            std::vector<Expr> ks;
            ks.reserve(e->kids.size());
            for (const auto& k : e->kids) ks.push_back(subst(k, repl));
            return sum(std::move(ks));
        }
    }
    return e;
}

inline Expr subst(const Expr& e, const std::string& name, const Expr& replacement) {
    return subst(e, std::map<std::string, Expr>{{name, replacement}});
}

inline std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& k : e->kids) n += node_count(k);
    return n;
}

// ---------------------------------------------------------------------------
// Printing. parse(to_string(e)) reproduces e structurally; see parse.hpp.

namespace detail {

inline std::string format_real(double v) {
    if (v == 0.0) return "0";
    if (std::abs(v) < 9.007199254740992e15 && v == std::floor(v)) {
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
        return std::string(buf, p);
    }
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

// Printing context, loosest to tightest binding.
enum class PrintCtx { Top, SumTerm, ProductFactor, QuotientDen, PowerBase };

inline std::string print(const Expr& e, PrintCtx ctx);

inline std::string print_constant(const Expr& e, PrintCtx ctx) {
    const double re = e->value.real();
    const double im = e->value.imag();
    std::string s;
    if (im == 0.0) {
        s = format_real(re);
    } else if (re == 0.0) {
        if (im == 1.0) s = "i";
        else if (im == -1.0) s = "-i";
        else s = format_real(im) + "*i";
    } else {
        std::string ims = im == 1.0 ? "i" : (im == -1.0 ? "-i" : format_real(im) + "*i");
        if (!ims.empty() && ims[0] == '-') {
            return "(" + format_real(re) + " - " + ims.substr(1) + ")";
        }
        return "(" + format_real(re) + " + " + ims + ")";
    }
    const bool negative = !s.empty() && s[0] == '-';
    const bool composite = s.find('*') != std::string::npos;
    if ((negative && ctx >= PrintCtx::ProductFactor) || (composite && ctx >= PrintCtx::QuotientDen)) {
        return "(" + s + ")";
    }
    return s;
}

inline std::string print(const Expr& e, PrintCtx ctx) {
    switch (e->kind) {
        case NodeKind::Constant:
            return print_constant(e, ctx);
        case NodeKind::Variable:
            return e->name;
        case NodeKind::Apply:
            return std::string(builtin_name(e->fn)) + "(" + print(e->kids[0], PrintCtx::Top) + ")";
        case NodeKind::Power: {
            std::string base = print(e->kids[0], PrintCtx::PowerBase);
            std::string ex = e->exponent < 0 ? "(" + std::to_string(e->exponent) + ")" : std::to_string(e->exponent);
            return base + "^" + ex;
        }
        case NodeKind::Quotient: {
            std::string n = print(e->kids[0], PrintCtx::ProductFactor);
            std::string d = print(e->kids[1], PrintCtx::QuotientDen);
            std::string s = n + "/" + d;
            if (ctx >= PrintCtx::QuotientDen) return "(" + s + ")";
            return s;
        }
        case NodeKind::Product: {
            std::string s;
            std::size_t start = 0;
            if (is_constant(e->kids[0], Complex(-1.0, 0.0))) {
                s = "-";
                start = 1;
            }
            for (std::size_t i = start; i < e->kids.size(); ++i) {
                if (i > start) s += "*";
                const Expr& k = e->kids[i];
                // A quotient factor needs parentheses: a*(1/b) is not a*1/b,
                // and a leading constant keeps its sign ("-3*u" reparses fine).
                PrintCtx kc = k->kind == NodeKind::Quotient ? PrintCtx::QuotientDen : PrintCtx::ProductFactor;
                if (i == start && is_constant(k)) kc = PrintCtx::SumTerm;
                s += print(k, kc);
            }
            if (ctx >= PrintCtx::QuotientDen) return "(" + s + ")";
            return s;
        }
        case NodeKind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                std::string ks = print(e->kids[i], PrintCtx::SumTerm);
                if (i == 0) {
                    s = ks;
                } else if (!ks.empty() && ks[0] == '-') {
                    s += " - " + ks.substr(1);
                } else {
                    s += " + " + ks;
                }
            }
            if (ctx >= PrintCtx::ProductFactor) return "(" + s + ")";
            return s;
        }
    }
    return "?";
}

}  // namespace detail

inline std::string to_string(const Expr& e) { return detail::print(e, detail::PrintCtx::Top); }

}  // namespace clsym
