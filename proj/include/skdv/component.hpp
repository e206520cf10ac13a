#pragma once

#include "skdv/multi_index.hpp"
#include "skdv/rational.hpp"
#include "skdv/superexpr.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace skdv::sym {

enum class FieldSym { u, xi };

class ComponentExpr;

/// Scalar-expression factor: the k-th x-derivative of a component field, or
/// an antiderivative node wrapping a subexpression.
struct CompAtom {
    FieldSym field = FieldSym::u;
    int deriv = 0;
    std::shared_ptr<const ComponentExpr> xinv;  // non-null: antiderivative atom
    std::string key;

    static CompAtom field_deriv(FieldSym f, int k);
    static CompAtom antiderivative(ComponentExpr body);

    bool is_xinv() const { return xinv != nullptr; }
    Parity parity() const;
    bool operator==(const CompAtom& o) const { return key == o.key; }
};

struct CompTerm {
    Rational coeff;
    std::vector<CompAtom> atoms;
};

/// Polynomial over the component fields u, xi and their derivatives and
/// antiderivatives, with xi-type atoms anticommuting.  Normal form mirrors
/// SuperExpr.
class ComponentExpr {
public:
    ComponentExpr() = default;

    static ComponentExpr zero() { return {}; }
    static ComponentExpr atom(FieldSym f, int deriv = 0);
    static ComponentExpr constant(Rational c);
    static ComponentExpr from_terms(std::vector<CompTerm> terms);

    const std::vector<CompTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ComponentExpr operator+(const ComponentExpr& o) const;
    ComponentExpr operator-(const ComponentExpr& o) const;
    ComponentExpr operator*(const ComponentExpr& o) const;
    ComponentExpr operator*(const Rational& c) const;
    ComponentExpr operator-() const { return *this * Rational(-1); }
    bool operator==(const ComponentExpr& o) const;

    /// x-derivative (even Leibniz rule); derivative of an antiderivative atom
    /// splices its body back in.
    ComponentExpr dx() const;
    /// Wraps termwise in antiderivative atoms.
    ComponentExpr x_antiderivative() const;

    Parity parity() const;
    int max_derivative() const;

    std::string encode() const;
    std::string to_string() const;

    nlohmann::json to_json() const;
    static ComponentExpr from_json(const nlohmann::json& j);

private:
    void normalize();
    std::vector<CompTerm> terms_;
};

/// Superfield value split as (lower, upper): the represented object is
/// lower + theta * upper.
struct ComponentPair {
    ComponentExpr lower;
    ComponentExpr upper;

    ComponentPair operator+(const ComponentPair& o) const {
        return {lower + o.lower, upper + o.upper};
    }
    ComponentPair operator*(const Rational& c) const { return {lower * c, upper * c}; }
};

ComponentPair pair_field();                      // Phi -> (xi, u)
ComponentPair pair_D(const ComponentPair& p);    // (a,b) -> (b, a')
ComponentPair pair_Q(const ComponentPair& p);    // (a,b) -> (-b, a')
ComponentPair pair_Dinv(const ComponentPair& p); // (a,b) -> (dx^{-1} b, a)
ComponentPair pair_dx(const ComponentPair& p);
ComponentPair pair_mul(const ComponentPair& a, const ComponentPair& b);

/// Expands a superfield expression over the components (eps-free input).
ComponentPair to_components(const SuperExpr& e);

/// Expands each eps-order separately: order -> component pair.
std::map<int, ComponentPair> eps_components(const SuperExpr& e);

/// Berezin integration: the x-integrand of the superspace integral of e.
inline ComponentExpr superspace_integrand(const SuperExpr& e) {
    return to_components(e).upper;
}

}  // namespace skdv::sym
