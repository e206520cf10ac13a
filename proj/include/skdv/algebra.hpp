#pragma once

#include "skdv/errors.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace skdv {

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }
}  // namespace detail

/// Element of a finite Grassmann algebra (generators square to zero) or of
/// the Clifford algebra with e_i e_j + e_j e_i = -2 delta_ij.  Immutable
/// value type; coefficients are exact rationals in symbolic contexts and
/// doubles in numeric ones -- never mixed.
template <class C>
class AlgebraElement {
public:
    AlgebraElement(AlgebraKind kind, int n) : kind_(kind), n_(n) {
        if (n < 1 || n > 8) throw Error("generator count must be in [1, 8]");
    }

    static AlgebraElement zero(AlgebraKind kind, int n) { return AlgebraElement(kind, n); }

    static AlgebraElement scalar(AlgebraKind kind, int n, C value) {
        AlgebraElement e(kind, n);
        e.set(MultiIndex::identity(), std::move(value));
        return e;
    }

    static AlgebraElement basis(AlgebraKind kind, int n, MultiIndex idx, C value = C(1)) {
        AlgebraElement e(kind, n);
        if (!idx.fits(n)) throw Error("multi-index exceeds generator count");
        e.set(idx, std::move(value));
        return e;
    }

    static AlgebraElement generator(AlgebraKind kind, int n, int i) {
        return basis(kind, n, MultiIndex::from_labels({i}));
    }

    AlgebraKind kind() const { return kind_; }
    int generators() const { return n_; }
    const std::map<MultiIndex, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    C coefficient(MultiIndex idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? C(0) : it->second;
    }

    void set(MultiIndex idx, C value) {
        if (!idx.fits(n_)) throw Error("multi-index exceeds generator count");
        if (detail::coeff_is_zero(value))
            terms_.erase(idx);
        else
            terms_[idx] = std::move(value);
    }

    Parity parity() const {
        if (terms_.empty()) return Parity::even;
        Parity p = terms_.begin()->first.parity();
        for (const auto& [idx, c] : terms_)
            if (idx.parity() != p) return Parity::mixed;
        return p;
    }

    AlgebraElement operator+(const AlgebraElement& rhs) const {
        require_compatible(rhs);
        AlgebraElement out = *this;
        for (const auto& [idx, c] : rhs.terms_) out.set(idx, out.coefficient(idx) + c);
        return out;
    }

    AlgebraElement operator-(const AlgebraElement& rhs) const {
        require_compatible(rhs);
        AlgebraElement out = *this;
        for (const auto& [idx, c] : rhs.terms_) out.set(idx, out.coefficient(idx) - c);
        return out;
    }

    AlgebraElement operator*(const C& s) const {
        AlgebraElement out(kind_, n_);
        if (detail::coeff_is_zero(s)) return out;
        for (const auto& [idx, c] : terms_) out.terms_[idx] = c * s;
        return out;
    }

    AlgebraElement operator-() const { return *this * C(-1); }

    AlgebraElement operator*(const AlgebraElement& rhs) const {
        require_compatible(rhs);
        AlgebraElement out(kind_, n_);
        for (const auto& [ia, ca] : terms_) {
            for (const auto& [ib, cb] : rhs.terms_) {
                auto [idx, sign] = basis_mul(kind_, ia, ib);
                if (sign == 0) continue;
                C add = ca * cb;
                if (sign < 0) add = -add;
                out.set(idx, out.coefficient(idx) + add);
            }
        }
        return out;
    }

    bool operator==(const AlgebraElement& rhs) const {
        return kind_ == rhs.kind_ && n_ == rhs.n_ && terms_ == rhs.terms_;
    }

    /// Coefficient of the identity word.
    C body() const { return coefficient(MultiIndex::identity()); }

    /// Everything except the identity component; body()*1 + soul() == *this.
    AlgebraElement soul() const {
        AlgebraElement out = *this;
        out.terms_.erase(MultiIndex::identity());
        return out;
    }

    /// Word-reversal conjugation with bar(e_i) = -e_i.  Clifford only.
    AlgebraElement bar() const {
        if (kind_ != AlgebraKind::clifford)
            throw UnsupportedOperationError("bar is defined on Clifford elements only");
        AlgebraElement out(kind_, n_);
        for (const auto& [idx, c] : terms_)
            out.terms_[idx] = (bar_sign(idx) < 0) ? -c : c;
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [idx, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += coeff_str(c) + "*" + idx.name(kind_);
        }
        return s;
    }

private:
    void require_compatible(const AlgebraElement& rhs) const {
        if (kind_ != rhs.kind_ || n_ != rhs.n_)
            throw IncompatibleAlgebraError("elements belong to different algebras");
    }

    static std::string coeff_str(const Rational& c) { return rat_to_string(c); }
    static std::string coeff_str(double c) { return std::to_string(c); }

    AlgebraKind kind_;
    int n_;
    std::map<MultiIndex, C> terms_;
};

/// P(xi bar(xi)): the identity component of xi * bar(xi).  For any element
/// with coefficients phi_A this equals sum_A phi_A^2; the product route is
/// the definition, the sum of squares a theorem checked in tests.
template <class C>
C body_projection(const AlgebraElement<C>& xi) {
    return (xi * xi.bar()).body();
}

namespace detail {
/// Uniform double in [-1, 1] with an explicit bit mapping so the stream is
/// identical across standard libraries.
inline double unit_symmetric(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * u - 1.0;
}
}  // namespace detail

/// Deterministic pseudo-random graded element; same seed gives the same
/// element.  Coefficients lie in [-1, 1].
inline AlgebraElement<double> random_element(std::uint64_t seed, Parity parity, int n,
                                             AlgebraKind kind) {
    if (parity == Parity::mixed)
        throw Error("random_element generates graded elements only");
    std::mt19937_64 rng(seed);
    AlgebraElement<double> out(kind, n);
    for (int bits = 0; bits < (1 << n); ++bits) {
        MultiIndex idx(static_cast<std::uint8_t>(bits));
        if (idx.parity() != parity) continue;
        out.set(idx, detail::unit_symmetric(rng));
    }
    return out;
}

/// Exact-coefficient variant with small rational entries, for property tests
/// that must hold with zero tolerance.
inline AlgebraElement<Rational> random_element_rational(std::uint64_t seed, Parity parity,
                                                        int n, AlgebraKind kind) {
    if (parity == Parity::mixed)
        throw Error("random_element generates graded elements only");
    std::mt19937_64 rng(seed);
    AlgebraElement<Rational> out(kind, n);
    for (int bits = 0; bits < (1 << n); ++bits) {
        MultiIndex idx(static_cast<std::uint8_t>(bits));
        if (idx.parity() != parity) continue;
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 9) + 1;
        out.set(idx, Rational(num, den));
    }
    return out;
}

// --- JSON form: {"kind": "clifford", "n": 2, "terms": [{"idx": [1,2], "c": -1.0}, ...]} ---

inline nlohmann::json to_json(const AlgebraElement<double>& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [idx, c] : e.terms())
        terms.push_back({{"idx", idx.labels()}, {"c", c}});
    return {{"kind", e.kind() == AlgebraKind::clifford ? "clifford" : "grassmann"},
            {"n", e.generators()},
            {"terms", terms}};
}

inline nlohmann::json to_json(const AlgebraElement<Rational>& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [idx, c] : e.terms())
        terms.push_back({{"idx", idx.labels()}, {"c", rat_to_string(c)}});
    return {{"kind", e.kind() == AlgebraKind::clifford ? "clifford" : "grassmann"},
            {"n", e.generators()},
            {"terms", terms}};
}

inline AlgebraKind kind_from_string(const std::string& s) {
    if (s == "clifford") return AlgebraKind::clifford;
    if (s == "grassmann") return AlgebraKind::grassmann;
    throw Error("unknown algebra kind: " + s);
}

inline AlgebraElement<double> element_from_json(const nlohmann::json& j) {
    AlgebraElement<double> e(kind_from_string(j.at("kind")), j.at("n"));
    for (const auto& t : j.at("terms"))
        e.set(MultiIndex::from_labels(t.at("idx").get<std::vector<int>>()),
              t.at("c").get<double>());
    return e;
}

inline AlgebraElement<Rational> rational_element_from_json(const nlohmann::json& j) {
    AlgebraElement<Rational> e(kind_from_string(j.at("kind")), j.at("n"));
    for (const auto& t : j.at("terms"))
        e.set(MultiIndex::from_labels(t.at("idx").get<std::vector<int>>()),
              rat_from_string(t.at("c").get<std::string>()));
    return e;
}

/// Max-abs over stored coefficients; the norm used for drift reporting.
inline double element_norm(const AlgebraElement<double>& e) {
    double m = 0.0;
    for (const auto& [idx, c] : e.terms()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace skdv
