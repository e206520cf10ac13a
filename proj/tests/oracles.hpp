#pragma once

// Independent reference implementations used by the test suites.  These are
// deliberately naive: explicit generator words, bubble-sort sign tracking,
// dense quadrature.  They must never call into the code paths they check.

#include "skdv/algebra.hpp"
#include "skdv/multi_index.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

// Normalizes a raw generator word by adjacent transpositions.  Returns the
// canonical ascending word and the sign; sign 0 means the word vanished
// (Grassmann repeated generator).
struct NormalWord {
    std::vector<int> word;
    int sign;
};

inline NormalWord normalize_word(skdv::AlgebraKind kind, std::vector<int> w) {
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == w[i + 1]) {
                if (kind == skdv::AlgebraKind::grassmann) return {{}, 0};
                sign = -sign;  // e_i e_i = -1
                w.erase(w.begin() + i, w.begin() + i + 2);
                changed = true;
                break;
            }
            if (w[i] > w[i + 1]) {
                std::swap(w[i], w[i + 1]);
                sign = -sign;
                changed = true;
            }
        }
    }
    return {w, sign};
}

// Word-level product of two algebra elements via the naive normalizer.
template <class C>
skdv::AlgebraElement<C> mul_reference(const skdv::AlgebraElement<C>& a,
                                      const skdv::AlgebraElement<C>& b) {
    skdv::AlgebraElement<C> out(a.kind(), a.generators());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            std::vector<int> w = ia.labels();
            for (int g : ib.labels()) w.push_back(g);
            auto norm = normalize_word(a.kind(), w);
            if (norm.sign == 0) continue;
            auto idx = skdv::MultiIndex::from_labels(norm.word);
            C add = ca * cb;
            if (norm.sign < 0) add = -add;
            out.set(idx, out.coefficient(idx) + add);
        }
    }
    return out;
}

// bar via the definition: reverse the word, negate each generator, normalize.
template <class C>
skdv::AlgebraElement<C> bar_reference(const skdv::AlgebraElement<C>& a) {
    skdv::AlgebraElement<C> out(a.kind(), a.generators());
    for (const auto& [idx, c] : a.terms()) {
        std::vector<int> w = idx.labels();
        std::reverse(w.begin(), w.end());
        auto norm = normalize_word(a.kind(), w);
        int sign = norm.sign;
        if (idx.grade() % 2 == 1) sign = -sign;  // (-1)^k from bar(e_i) = -e_i
        C add = c;
        if (sign < 0) add = -add;
        auto canon = skdv::MultiIndex::from_labels(norm.word);
        out.set(canon, out.coefficient(canon) + add);
    }
    return out;
}

// Adaptive-free dense quadrature of a smooth decaying function: composite
// Simpson on a fine fixed mesh over [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals = 200000) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

// One-soliton profile of the Benjamin-normalized KdV flow.
inline double soliton_profile(double c, double x) {
    double s = oracle::sech(0.5 * std::sqrt(c) * x);
    return 3.0 * c * s * s;
}

}  // namespace oracle
