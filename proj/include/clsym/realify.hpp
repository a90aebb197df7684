#pragma once

#include <map>
#include <string>
#include <utility>

#include "clsym/expr.hpp"

namespace clsym {

// A complex quantity held as a pair of real-alphabet expressions.
struct RealPair {
    Expr re, im;
};

inline RealPair pair_const(Complex c) { return {num(c.real()), num(c.imag())}; }

inline RealPair pair_add(const RealPair& a, const RealPair& b) {
    return {a.re + b.re, a.im + b.im};
}

inline RealPair pair_sub(const RealPair& a, const RealPair& b) {
    return {a.re - b.re, a.im - b.im};
}

inline RealPair pair_neg(const RealPair& a) { return {neg(a.re), neg(a.im)}; }

inline RealPair pair_mul(const RealPair& a, const RealPair& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline RealPair pair_scale(double k, const RealPair& a) { return {k * a.re, k * a.im}; }

inline RealPair pair_div(const RealPair& a, const RealPair& b) {
    Expr d = pow_int(b.re, 2) + pow_int(b.im, 2);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline RealPair pair_pow(const RealPair& a, long long n) {
    if (n < 0) return pair_div(pair_const(Complex(1.0, 0.0)), pair_pow(a, -n));
    RealPair acc = pair_const(Complex(1.0, 0.0));
    for (long long k = 0; k < n; ++k) acc = pair_mul(acc, a);
    return acc;
}

inline RealPair operator+(const RealPair& a, const RealPair& b) { return pair_add(a, b); }
inline RealPair operator-(const RealPair& a, const RealPair& b) { return pair_sub(a, b); }
inline RealPair operator*(const RealPair& a, const RealPair& b) { return pair_mul(a, b); }
inline RealPair operator*(double k, const RealPair& a) { return pair_scale(k, a); }

// Substitution of complex symbols by real part pairs: z -> x + iy, and so on.
using RealifyMap = std::map<std::string, std::pair<std::string, std::string>>;

inline const RealifyMap& default_realify_map() {
    static const RealifyMap m{{"z", {"x", "y"}}, {"u", {"f", "g"}}, {"up", {"h", "l"}}};
    return m;
}

// Separates an analytic expression over the complex alphabet into real and
// imaginary parts over the real alphabet. Exact away from branch cuts:
// eval(e) == eval(re) + i*eval(im) for consistently bound variables. log and
// sqrt produce principal-branch forms valid where the argument has positive
// real part; atan where the argument lies inside the unit disk.
inline RealPair realify(const Expr& e, const RealifyMap& map = default_realify_map()) {
    switch (e->kind) {
        case NodeKind::Constant:
            return pair_const(e->value);
        case NodeKind::Variable: {
            auto it = map.find(e->name);
            if (it == map.end()) throw RealifyError("no real part pair declared for '" + e->name + "'");
            return {var(it->second.first), var(it->second.second)};
        }
        case NodeKind::Sum: {
            RealPair acc = pair_const(Complex(0.0, 0.0));
            for (const auto& k : e->kids) acc = pair_add(acc, realify(k, map));
            return acc;
        }
        case NodeKind::Product: {
            RealPair acc = pair_const(Complex(1.0, 0.0));
            for (const auto& k : e->kids) acc = pair_mul(acc, realify(k, map));
            return acc;
        }
        case NodeKind::Quotient:
            return pair_div(realify(e->kids[0], map), realify(e->kids[1], map));
        case NodeKind::Power:
            return pair_pow(realify(e->kids[0], map), e->exponent);
        case NodeKind::Apply: {
            RealPair a = realify(e->kids[0], map);
            const Expr& p = a.re;
            const Expr& q = a.im;
            switch (e->fn) {
                case Builtin::Sin:
                    return {apply(Builtin::Sin, p) * apply(Builtin::Cosh, q),
                            apply(Builtin::Cos, p) * apply(Builtin::Sinh, q)};
                case Builtin::Cos:
                    return {apply(Builtin::Cos, p) * apply(Builtin::Cosh, q),
                            neg(apply(Builtin::Sin, p) * apply(Builtin::Sinh, q))};
                case Builtin::Tan: {
                    RealPair s{apply(Builtin::Sin, p) * apply(Builtin::Cosh, q),
                               apply(Builtin::Cos, p) * apply(Builtin::Sinh, q)};
                    RealPair c{apply(Builtin::Cos, p) * apply(Builtin::Cosh, q),
                               neg(apply(Builtin::Sin, p) * apply(Builtin::Sinh, q))};
                    return pair_div(s, c);
                }
                case Builtin::Sinh:
                    return {apply(Builtin::Sinh, p) * apply(Builtin::Cos, q),
                            apply(Builtin::Cosh, p) * apply(Builtin::Sin, q)};
                case Builtin::Cosh:
                    return {apply(Builtin::Cosh, p) * apply(Builtin::Cos, q),
                            apply(Builtin::Sinh, p) * apply(Builtin::Sin, q)};
                case Builtin::Exp: {
                    Expr r = apply(Builtin::Exp, p);
                    return {r * apply(Builtin::Cos, q), r * apply(Builtin::Sin, q)};
                }
                case Builtin::Log: {
                    Expr norm2 = pow_int(p, 2) + pow_int(q, 2);
                    return {0.5 * apply(Builtin::Log, norm2), apply(Builtin::Atan, q / p)};
                }
                case Builtin::Sqrt: {
                    Expr norm2 = pow_int(p, 2) + pow_int(q, 2);
                    Expr r = apply(Builtin::Exp, 0.25 * apply(Builtin::Log, norm2));
                    Expr half_arg = 0.5 * apply(Builtin::Atan, q / p);
                    return {r * apply(Builtin::Cos, half_arg), r * apply(Builtin::Sin, half_arg)};
                }
                case Builtin::Atan: {
                    Expr norm2 = pow_int(p, 2) + pow_int(q, 2);
                    Expr re = 0.5 * apply(Builtin::Atan, (2.0 * p) / (1.0 - norm2));
                    Expr up = pow_int(p, 2) + pow_int(1.0 + q, 2);
                    Expr dn = pow_int(p, 2) + pow_int(1.0 - q, 2);
                    Expr im = 0.25 * apply(Builtin::Log, up / dn);
                    return {re, im};
                }
            }
            throw RealifyError("unsupported builtin");
        }
    }
    throw RealifyError("non-analytic node");
}

}  // namespace clsym
