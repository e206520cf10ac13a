#pragma once

#include "skdv/component.hpp"
#include "skdv/rational.hpp"
#include "skdv/superexpr.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace skdv::sym {

/// A conserved-charge density: the integrand whose x-integral is monitored
/// along flows.  The superfield form is kept for cohomology work; the
/// component form is what gets compiled and evaluated.
struct ChargeDensity {
    std::string name;
    Rational dimension;
    SuperExpr super_density;
    ComponentExpr component_form;
    bool nonlocal = false;

    nlohmann::json to_json() const;
    static ChargeDensity from_json(const nlohmann::json& j);
};

/// Decides whether a density integrates to zero (equality with zero modulo
/// total derivatives).  Injected by callers that have a numeric oracle.
using TotalDerivativeCheck = std::function<bool(const SuperExpr&)>;

/// Local family from the series expansion of the integral of the inverted
/// map: even orders carry the charges of dimension 1, 3, 5, ...; odd orders
/// must reduce to total derivatives and are validated when a check is given.
std::vector<ChargeDensity> expand_local_charges(int max_order,
                                                const TotalDerivativeCheck& odd_check = {});

/// Odd nonlocal family of dimensions 1/2, 3/2, 5/2 from the exponential
/// generating charge; antiderivative atoms appear from order 1 on.
std::vector<ChargeDensity> expand_fermionic_nonlocal(int max_order);

/// Even nonlocal family of dimensions 1, 2 from the double-exponential
/// generating charge.
std::vector<ChargeDensity> expand_bosonic_nonlocal(int max_order);

/// Integrand-level cohomology action: h -> Q h.  The caller reduces modulo
/// total derivatives (usually numerically).
inline SuperExpr apply_Q_density(const SuperExpr& h) { return h.Q(); }

/// Right-hand side of the superfield evolution equation, as an expression in
/// the field symbol: D^6 F + 3 D^2(F DF).
SuperExpr skdv_superfield_rhs();

/// Deformed right-hand side: adds -3 eps^2 (DF) D^2(F DF).
SuperExpr gardner_superfield_rhs();

}  // namespace skdv::sym
