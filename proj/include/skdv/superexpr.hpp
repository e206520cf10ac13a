#pragma once

#include "skdv/multi_index.hpp"
#include "skdv/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace skdv::sym {

class SuperExpr;

/// One multiplicative factor of a superfield monomial: either the derivative
/// word D^k Q^q applied to the field symbol (q is 0 or 1; longer words in D
/// and Q normalize to this shape via D^2 = dx, Q^2 = -dx, QD = -DQ), or a
/// formal antiderivative Dinv(expr) kept opaque.
struct SuperAtom {
    int dpow = 0;
    bool q = false;
    std::shared_ptr<const SuperExpr> dinv;  // non-null: Dinv atom
    std::string key;                        // canonical ordering/identity key

    static SuperAtom field_word(int dpow, bool q);
    static SuperAtom antiderivative(SuperExpr body);

    bool is_dinv() const { return dinv != nullptr; }
    Parity parity() const;
    bool operator==(const SuperAtom& o) const { return key == o.key; }
};

struct SuperTerm {
    Rational coeff;
    int epow = 0;  // power of the deformation parameter
    std::vector<SuperAtom> atoms;
};

/// Superfield differential polynomial in one odd field symbol, closed under
/// D, Q, dx, Dinv, products, and formal eps-series.  Held in a canonical
/// normal form: atoms of each term sorted with graded sign bookkeeping (an
/// odd atom squared is zero), like terms merged, terms ordered.
class SuperExpr {
public:
    SuperExpr() = default;

    static SuperExpr zero() { return {}; }
    /// The field symbol itself (odd).
    static SuperExpr field();
    static SuperExpr constant(Rational c);
    /// Builds from explicit terms and normalizes.
    static SuperExpr from_terms(std::vector<SuperTerm> terms);

    const std::vector<SuperTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SuperExpr operator+(const SuperExpr& o) const;
    SuperExpr operator-(const SuperExpr& o) const;
    SuperExpr operator*(const SuperExpr& o) const;
    SuperExpr operator*(const Rational& c) const;
    SuperExpr operator-() const { return *this * Rational(-1); }
    bool operator==(const SuperExpr& o) const;

    /// Multiply by eps^m.
    SuperExpr eps_shift(int m) const;
    /// Drop terms of eps-order above K.
    SuperExpr truncate_eps(int max_order) const;
    /// Coefficient of eps^m, returned eps-free.
    SuperExpr eps_coefficient(int m) const;
    int max_eps_order() const;

    /// Covariant derivative: graded Leibniz, D(Dinv(e)) = e, and derivative
    /// words normalized through D^2 = dx.
    SuperExpr D() const;
    /// Supersymmetry generator; anticommutes with D, Q^2 = -dx.
    SuperExpr Q() const;
    /// Formal antiderivative applied termwise; products underneath stay opaque.
    SuperExpr Dinv() const;
    SuperExpr dx() const { return D().D(); }

    /// Parity of the expression; mixed if terms disagree (zero is even).
    Parity parity() const;

    std::string encode() const;     // canonical key
    std::string to_string() const;  // readable rendering

private:
    friend struct SuperAtom;
    void normalize();
    std::vector<SuperTerm> terms_;
};

/// The deformation map applied to an expression standing for the auxiliary
/// field: e + eps D^2 e - eps^2 e De.
SuperExpr gardner_forward(const SuperExpr& e);

/// Series inverse of the map: the unique expansion chi = sum eps^m chi_m with
/// chi_0 = field such that gardner_forward(chi) = field + O(eps^{K+1}).
SuperExpr gardner_invert(int max_order);

}  // namespace skdv::sym
