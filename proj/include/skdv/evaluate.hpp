#pragma once

#include "skdv/charges.hpp"
#include "skdv/component.hpp"
#include "skdv/field.hpp"
#include "skdv/spectral.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace skdv::num {

/// Per-evaluation scratch: caches derivative fields and antiderivative
/// subexpressions so repeated atoms cost one transform each.
class Evaluation {
public:
    Evaluation(const FieldState& state, SpectralWorkspace& ws,
               double decay_threshold = 1e-10)
        : state_(state), ws_(ws), decay_threshold_(decay_threshold) {}

    /// Pointwise value of the expression as an algebra-valued field.
    AlgebraField field_of(const sym::ComponentExpr& e);

    /// Integral over the grid, channel-wise.
    AlgebraElement<double> integral_of(const sym::ComponentExpr& e);

private:
    const AlgebraField& atom_field(sym::FieldSym f, int deriv);
    const AlgebraField& xinv_field(const sym::ComponentExpr& body,
                                   const std::string& key);

    const FieldState& state_;
    SpectralWorkspace& ws_;
    double decay_threshold_;
    std::map<std::pair<int, int>, AlgebraField> derivs_;
    std::map<std::string, AlgebraField> xinvs_;
};

/// Compiled density: pure function of a state.  Safe to call concurrently;
/// each call builds its own scratch.
class CompiledDensity {
public:
    explicit CompiledDensity(sym::ComponentExpr form) : form_(std::move(form)) {}

    const sym::ComponentExpr& form() const { return form_; }

    AlgebraElement<double> operator()(const FieldState& s, SpectralWorkspace& ws,
                                      double decay_threshold = 1e-10) const {
        Evaluation ev(s, ws, decay_threshold);
        return ev.integral_of(form_);
    }

private:
    sym::ComponentExpr form_;
};

inline CompiledDensity compile_density(const sym::ChargeDensity& d) {
    return CompiledDensity(d.component_form);
}

/// Seeded set of smooth decaying algebra-valued states used to decide
/// density identities by evaluation.
struct EquivEnsemble {
    std::vector<FieldState> members;
    std::shared_ptr<Grid> grid;

    static EquivEnsemble make(std::uint64_t seed, int count = 20, int generators = 4,
                              double half_length = 30.0, int points = 256);
};

/// True iff the superspace integrals of the two densities agree on every
/// ensemble member, channel-wise within the absolute tolerance.  Total
/// derivatives of decaying quantities integrate to zero, so this decides
/// equality modulo total derivatives.
bool numeric_equiv(const sym::SuperExpr& a, const sym::SuperExpr& b,
                   const EquivEnsemble& ensemble, double tol = 1e-9);

/// Largest channel-wise discrepancy of the two density integrals over the
/// ensemble (the quantity numeric_equiv compares against the tolerance).
double equiv_discrepancy(const sym::SuperExpr& a, const sym::SuperExpr& b,
                         const EquivEnsemble& ensemble);

/// Charge value of an integrand on one state.
AlgebraElement<double> charge_value(const sym::ComponentExpr& integrand,
                                    const FieldState& s, SpectralWorkspace& ws);

/// A total-derivative check for expand_local_charges backed by the ensemble.
sym::TotalDerivativeCheck ensemble_total_derivative_check(
    std::shared_ptr<const EquivEnsemble> ensemble, double tol = 1e-9);

}  // namespace skdv::num
