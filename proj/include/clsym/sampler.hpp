#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clsym/eval.hpp"

namespace clsym {

struct SymbolRegion {
    double re_lo = -2.0, re_hi = 2.0;
    double im_lo = -2.0, im_hi = 2.0;
};

// A sample is rejected unless |expr| >= min_abs at the drawn binding.
struct ExclusionPredicate {
    Expr expr;
    double min_abs = 1e-3;
};

// Deterministic seeded sample source over complex rectangles. The same seed
// and configuration always reproduces the same sequence of bindings.
class Sampler {
public:
    std::uint64_t seed = 42;
    int count = 32;
    std::map<std::string, SymbolRegion> regions;
    std::map<std::string, std::vector<Complex>> discrete;  // cycled instead of drawn
    std::vector<ExclusionPredicate> exclusions;
    EvalGuards guards = sampling_guards();
    int max_rejections = 1000;

    Sampler fork(std::uint64_t offset) const {
        Sampler s = *this;
        s.seed = seed + 0x9e3779b97f4a7c15ULL * (offset + 1);
        return s;
    }

    // Draws `count` accepted bindings for the given symbols; `accept` may run
    // extra guarded evaluations and reject via SampleRejected / false.
    template <typename AcceptFn>
    std::vector<Binding> draw(const std::set<std::string>& symbols, AcceptFn&& accept) const {
        std::mt19937_64 rng(seed);
        std::vector<Binding> out;
        int rejections = 0;
        int want = count;
        if (symbols.empty()) want = 1;
        while (static_cast<int>(out.size()) < want) {
            Binding b;
            for (const auto& s : symbols) {
                auto dit = discrete.find(s);
                if (dit != discrete.end()) {
                    b.bind(s, dit->second[rng() % dit->second.size()]);
                    continue;
                }
                SymbolRegion r;
                auto rit = regions.find(s);
                if (rit != regions.end()) r = rit->second;
                b.bind(s, Complex(r.re_lo + unit(rng) * (r.re_hi - r.re_lo),
                                  r.im_lo + unit(rng) * (r.im_hi - r.im_lo)));
            }
            bool ok = true;
            try {
                for (const auto& ex : exclusions) {
                    bool relevant = true;
                    for (const auto& v : free_vars(ex.expr)) {
                        if (!symbols.count(v)) { relevant = false; break; }
                    }
                    if (!relevant) continue;
                    if (std::abs(eval(ex.expr, b, guards)) < ex.min_abs) { ok = false; break; }
                }
                if (ok) ok = accept(b);
            } catch (const SampleRejected&) {
                ok = false;
            } catch (const PoleOrSingularityError&) {
                ok = false;  // exact singularity at a drawn point
            }
            if (!ok) {
                if (++rejections > max_rejections) {
                    throw SamplerExhaustedError("more than " + std::to_string(max_rejections) +
                                                " rejected samples; exclusion predicates too tight");
                }
                continue;
            }
            out.push_back(std::move(b));
        }
        return out;
    }

    std::vector<Binding> draw(const std::set<std::string>& symbols) const {
        return draw(symbols, [](const Binding&) { return true; });
    }

private:
    static double unit(std::mt19937_64& rng) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
};

struct ZeroTestResult {
    bool is_zero = false;
    double max_residual = 0.0;  // max over samples of |value| / (1 + largest subterm)
    int samples = 0;
    int strongly_nonzero = 0;  // samples with residual > 10*tol
    double tol = 0.0;
};

// Probabilistic zero test: true iff the expression vanishes at every accepted
// sample, relative to the size of its largest subterm there.
inline ZeroTestResult equiv_zero(const Expr& e, const Sampler& s, double tol = 1e-9) {
    ZeroTestResult r;
    r.tol = tol;
    auto vars = free_vars(e);
    std::vector<double> residuals;
    auto bindings = s.draw(vars, [&](const Binding& b) {
        EvalResult ev = eval_full(e, b, s.guards);
        residuals.push_back(std::abs(ev.value) / (1.0 + ev.max_abs_subterm));
        return true;
    });
    (void)bindings;
    r.samples = static_cast<int>(residuals.size());
    for (double x : residuals) {
        if (x > r.max_residual) r.max_residual = x;
        if (x > 10.0 * tol) ++r.strongly_nonzero;
    }
    r.is_zero = r.max_residual <= tol;
    return r;
}

}  // namespace clsym
