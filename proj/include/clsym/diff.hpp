#pragma once

#include "clsym/expr.hpp"

namespace clsym {

// Exact symbolic partial derivative; all symbols other than s are held fixed.
inline Expr diff(const Expr& e, const std::string& s) {
    switch (e->kind) {
        case NodeKind::Constant:
            return num(0.0);
        case NodeKind::Variable:
            return num(e->name == s ? 1.0 : 0.0);
        case NodeKind::Sum: {
            std::vector<Expr> ks;
            ks.reserve(e->kids.size());
            for (const auto& k : e->kids) ks.push_back(diff(k, s));
            return sum(std::move(ks));
        }
        case NodeKind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                std::vector<Expr> fac = e->kids;
                fac[i] = diff(e->kids[i], s);
                terms.push_back(product(std::move(fac)));
            }
            return sum(std::move(terms));
        }
        case NodeKind::Quotient: {
            const Expr& n = e->kids[0];
            const Expr& d = e->kids[1];
            return quotient(diff(n, s) * d - n * diff(d, s), pow_int(d, 2));
        }
        case NodeKind::Power: {
            const Expr& base = e->kids[0];
            return num(static_cast<double>(e->exponent)) * pow_int(base, e->exponent - 1) * diff(base, s);
        }
        case NodeKind::Apply: {
            const Expr& a = e->kids[0];
            Expr outer;
            switch (e->fn) {
                case Builtin::Sin: outer = apply(Builtin::Cos, a); break;
                case Builtin::Cos: outer = neg(apply(Builtin::Sin, a)); break;
                case Builtin::Tan: outer = 1.0 + pow_int(apply(Builtin::Tan, a), 2); break;
                case Builtin::Sinh: outer = apply(Builtin::Cosh, a); break;
                case Builtin::Cosh: outer = apply(Builtin::Sinh, a); break;
                case Builtin::Exp: outer = apply(Builtin::Exp, a); break;
                case Builtin::Log: outer = 1.0 / a; break;
                case Builtin::Sqrt: outer = quotient(num(1.0), 2.0 * apply(Builtin::Sqrt, a)); break;
                case Builtin::Atan: outer = quotient(num(1.0), 1.0 + pow_int(a, 2)); break;
            }
            return outer * diff(a, s);
        }
    }
    return num(0.0);
}

inline Expr diff(const Expr& e, const std::string& s, int order) {
    Expr r = e;
    for (int k = 0; k < order; ++k) r = diff(r, s);
    return r;
}

}  // namespace clsym
