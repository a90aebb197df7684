#pragma once

#include <cmath>
#include <map>
#include <string>

#include "clsym/expr.hpp"

namespace clsym {

// Maps symbol names to complex values. Binding a name twice is an error.
class Binding {
public:
    Binding() = default;
    Binding(std::initializer_list<std::pair<const std::string, Complex>> init) {
        for (const auto& [k, v] : init) bind(k, v);
    }

    void bind(const std::string& name, Complex v) {
        if (!m_.emplace(name, v).second) throw Error("symbol '" + name + "' bound twice");
    }

    void rebind(const std::string& name, Complex v) { m_[name] = v; }

    const Complex* find(const std::string& name) const {
        auto it = m_.find(name);
        return it == m_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, Complex>& values() const { return m_; }

private:
    std::map<std::string, Complex> m_;
};

// With nonzero floors, evaluation points close to poles or branch cuts raise
// SampleRejected instead of producing untrustworthy values; the sampler
// redraws. With zero floors only exact singularities are errors.
struct EvalGuards {
    double denominator_floor = 0.0;
    double branch_margin = 0.0;
};

inline EvalGuards sampling_guards() { return EvalGuards{1e-3, 1e-3}; }

struct EvalResult {
    Complex value;
    double max_abs_subterm = 0.0;  // scale reference for relative zero tests
};

namespace detail {

inline Complex eval_rec(const Expr& e, const Binding& b, const EvalGuards& g, double& maxabs) {
    Complex v;
    switch (e->kind) {
        case NodeKind::Constant:
            v = e->value;
            break;
        case NodeKind::Variable: {
            const Complex* p = b.find(e->name);
            if (!p) throw UnboundVariableError(e->name);
            v = *p;
            break;
        }
        case NodeKind::Sum: {
            v = Complex(0.0, 0.0);
            for (const auto& k : e->kids) v += eval_rec(k, b, g, maxabs);
            break;
        }
        case NodeKind::Product: {
            v = Complex(1.0, 0.0);
            for (const auto& k : e->kids) v *= eval_rec(k, b, g, maxabs);
            break;
        }
        case NodeKind::Quotient: {
            Complex n = eval_rec(e->kids[0], b, g, maxabs);
            Complex d = eval_rec(e->kids[1], b, g, maxabs);
            double ad = std::abs(d);
            if (ad == 0.0) throw PoleOrSingularityError("division by zero");
            if (ad < g.denominator_floor) throw SampleRejected{};
            v = n / d;
            break;
        }
        case NodeKind::Power: {
            Complex base = eval_rec(e->kids[0], b, g, maxabs);
            long long n = e->exponent;
            if (n < 0) {
                double ab = std::abs(base);
                if (ab == 0.0) throw PoleOrSingularityError("zero base with negative exponent");
                if (ab < g.denominator_floor) throw SampleRejected{};
            }
            Complex acc(1.0, 0.0);
            Complex p = base;
            long long k = n < 0 ? -n : n;
            while (k) {
                if (k & 1) acc *= p;
                p *= p;
                k >>= 1;
            }
            v = n < 0 ? Complex(1.0, 0.0) / acc : acc;
            break;
        }
        case NodeKind::Apply: {
            Complex w = eval_rec(e->kids[0], b, g, maxabs);
            switch (e->fn) {
                case Builtin::Tan: {
                    Complex c = std::cos(w);
                    double ac = std::abs(c);
                    if (ac == 0.0) throw PoleOrSingularityError("tan at a pole");
                    if (ac < g.denominator_floor) throw SampleRejected{};
                    v = std::sin(w) / c;
                    break;
                }
                case Builtin::Log:
                case Builtin::Sqrt: {
                    if (e->fn == Builtin::Log && std::abs(w) == 0.0)
                        throw PoleOrSingularityError("log of zero");
                    // The realified forms of log and sqrt are principal-branch
                    // expressions valid on Re > 0; sampling stays there.
                    if (g.branch_margin > 0.0 && w.real() < g.branch_margin) throw SampleRejected{};
                    v = e->fn == Builtin::Log ? std::log(w) : std::sqrt(w);
                    break;
                }
                case Builtin::Atan: {
                    if (w == Complex(0.0, 1.0) || w == Complex(0.0, -1.0))
                        throw PoleOrSingularityError("atan at a pole");
                    if (g.branch_margin > 0.0 && std::abs(w.imag()) > 1e-9 &&
                        1.0 - std::norm(w) < g.branch_margin)
                        throw SampleRejected{};
                    v = std::atan(w);
                    break;
                }
                default:
                    v = eval_builtin(e->fn, w);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        if (g.denominator_floor > 0.0 || g.branch_margin > 0.0) throw SampleRejected{};
        throw NonFiniteError("while evaluating " + to_string(e));
    }
    double a = std::abs(v);
    if (a > maxabs) maxabs = a;
    return v;
}

}  // namespace detail

inline EvalResult eval_full(const Expr& e, const Binding& b, const EvalGuards& g = {}) {
    EvalResult r;
    r.max_abs_subterm = 0.0;
    r.value = detail::eval_rec(e, b, g, r.max_abs_subterm);
    return r;
}

inline Complex eval(const Expr& e, const Binding& b, const EvalGuards& g = {}) {
    return eval_full(e, b, g).value;
}

}  // namespace clsym
