#include "skdv/rhs.hpp"

#include "skdv/charges.hpp"
#include "skdv/errors.hpp"

namespace skdv::num {

using sym::ComponentExpr;
using sym::FieldSym;

void RhsSystem::full(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                     AlgebraField& dxi) const {
    nonlinear(s, ws, du, dxi);
    AlgebraField u3 = ws.derivative(s.u, 3);
    AlgebraField xi3 = ws.derivative(s.xi, 3);
    u3 *= linear_coeff();
    xi3 *= linear_coeff();
    du += u3;
    dxi += xi3;
}

void SkdvRhs::nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                        AlgebraField& dxi) const {
    AlgebraField u1 = ws.derivative(s.u, 1);
    AlgebraField xi2 = ws.derivative(s.xi, 2);
    du = s.u * u1 * 6.0 + s.xi * xi2 * (-3.0);
    dxi = ws.derivative(s.xi * s.u, 1) * 3.0;
}

namespace {

// Removes the monomial c * f^(3) from the expression and returns c; the
// integrating factor carries it instead.
sym::ComponentExpr strip_linear_third(const ComponentExpr& e, FieldSym f, Rational& coeff) {
    std::vector<sym::CompTerm> kept;
    coeff = 0;
    for (const auto& t : e.terms()) {
        if (t.atoms.size() == 1 && !t.atoms[0].is_xinv() && t.atoms[0].field == f &&
            t.atoms[0].deriv == 3) {
            coeff += t.coeff;
            continue;
        }
        kept.push_back(t);
    }
    return ComponentExpr::from_terms(std::move(kept));
}

}  // namespace

GardnerRhs::GardnerRhs(double eps) : eps_(eps) {
    auto orders = sym::eps_components(sym::gardner_superfield_rhs());
    Rational cu, cxi;
    du0_ = strip_linear_third(orders.at(0).upper, FieldSym::u, cu);
    dxi0_ = strip_linear_third(orders.at(0).lower, FieldSym::xi, cxi);
    if (cu != 1 || cxi != 1)
        throw InternalConsistencyError("unexpected linear part in the deformed flow");
    du2_ = orders.at(2).upper;
    dxi2_ = orders.at(2).lower;
}

void GardnerRhs::nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                           AlgebraField& dxi) const {
    Evaluation ev(s, ws, 0.0);
    du = ev.field_of(du0_) + ev.field_of(du2_) * (eps_ * eps_);
    dxi = ev.field_of(dxi0_) + ev.field_of(dxi2_) * (eps_ * eps_);
}

void BrokenRhs::nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                          AlgebraField& dxi) const {
    AlgebraField u1 = ws.derivative(s.u, 1);
    du = s.u * u1 * (-1.0);

    RealArray p = body_projection_field(s.xi);
    RealArray p1 = ws.derivative(p, 1);
    RealArray& du_body = du.channel(MultiIndex::identity());
    for (int j = 0; j < s.grid.points(); ++j) du_body[j] -= 0.25 * p1[j];

    dxi = ws.derivative(s.xi * s.u, 1) * (-0.5);
}

FieldState gardner_map_state(const FieldState& s, double eps, SpectralWorkspace& ws) {
    static const auto orders = [] {
        return sym::eps_components(sym::gardner_forward(sym::SuperExpr::field()));
    }();
    FieldState out(s.grid, s.u.kind(), s.u.generators());
    out.t = s.t;
    Evaluation ev(s, ws, 0.0);
    double w = 1.0;
    for (const auto& [m, pair] : orders) {
        w = std::pow(eps, m);
        out.u += ev.field_of(pair.upper) * w;
        out.xi += ev.field_of(pair.lower) * w;
    }
    return out;
}

}  // namespace skdv::num
