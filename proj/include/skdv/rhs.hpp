#pragma once

#include "skdv/component.hpp"
#include "skdv/evaluate.hpp"
#include "skdv/field.hpp"
#include "skdv/spectral.hpp"

namespace skdv::num {

/// Semi-linear system d/dt (u, xi) = c (u_xxx, xi_xxx) + N(u, xi).  The
/// stiff linear part is exposed separately so the integrating-factor scheme
/// can treat it exactly.
class RhsSystem {
public:
    virtual ~RhsSystem() = default;

    virtual double linear_coeff() const = 0;

    /// Nonlinear remainder on a physical state.
    virtual void nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                           AlgebraField& dxi) const = 0;

    /// Full right-hand side, linear part included.
    void full(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
              AlgebraField& dxi) const;
};

/// u_t = u''' + 6 u u' - 3 xi xi'',  xi_t = xi''' + 3 (xi u)'.
class SkdvRhs : public RhsSystem {
public:
    double linear_coeff() const override { return 1.0; }
    void nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                   AlgebraField& dxi) const override;
};

/// Deformed flow compiled from the superfield form; at eps = 0 it coincides
/// with the undeformed system.
class GardnerRhs : public RhsSystem {
public:
    explicit GardnerRhs(double eps);
    double linear_coeff() const override { return 1.0; }
    double eps() const { return eps_; }
    void nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                   AlgebraField& dxi) const override;

private:
    double eps_;
    sym::ComponentExpr du0_, dxi0_, du2_, dxi2_;
};

/// Clifford-valued system u_t = -u''' - u u' - (1/4) P(xi bar xi)',
/// xi_t = -xi''' - (1/2) (xi u)'.  With xi = 0 this is the Benjamin-normalized
/// KdV flow.
class BrokenRhs : public RhsSystem {
public:
    double linear_coeff() const override { return -1.0; }
    void nonlinear(const FieldState& s, SpectralWorkspace& ws, AlgebraField& du,
                   AlgebraField& dxi) const override;
};

/// Pointwise deformation map on states: u and xi of the developed field in
/// terms of the auxiliary one.
FieldState gardner_map_state(const FieldState& s, double eps, SpectralWorkspace& ws);

}  // namespace skdv::num
