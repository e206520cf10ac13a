#pragma once

#include "skdv/field.hpp"
#include "skdv/rhs.hpp"
#include "skdv/spectral.hpp"

#include <functional>
#include <vector>

namespace skdv::num {

enum class Method { rk4, ifrk4 };

struct SchemeConfig {
    double dt = 1e-3;
    Method method = Method::ifrk4;
    bool dealias = true;

    /// Stability guard for the explicit scheme on the third-derivative term:
    /// dt <= c dx^3 with c = 2 sqrt(2) / pi^3 (imaginary-axis stability of
    /// the classical Runge-Kutta boundary at the grid's largest wavenumber).
    static constexpr double rk4_cfl_constant = 0.09122;

    void validate(const Grid& g) const {
        if (dt <= 0) throw ConfigError("time step must be positive");
        if (method == Method::rk4) {
            const double dx = g.dx();
            if (dt > rk4_cfl_constant * dx * dx * dx)
                throw ConfigError("explicit scheme violates the dt <= c dx^3 guard");
        }
    }
};

inline Method method_from_string(const std::string& s) {
    if (s == "rk4") return Method::rk4;
    if (s == "ifrk4") return Method::ifrk4;
    throw ConfigError("unknown method: " + s);
}

/// Advances the state to time s.t + T (T may be negative) and returns the
/// final state.  on_sample is called with the state at t = s.t, then every
/// sample_interval, and at the final time.  Deterministic; raises BlowUpError
/// with the last finite sample time if the fields stop being finite.
FieldState integrate(const FieldState& s, const RhsSystem& rhs, const SchemeConfig& scheme,
                     double T, double sample_interval, SpectralWorkspace& ws,
                     const std::function<void(const FieldState&)>& on_sample = {});

/// Convenience wrapper collecting the samples.
std::vector<FieldState> integrate_collect(const FieldState& s, const RhsSystem& rhs,
                                          const SchemeConfig& scheme, double T,
                                          double sample_interval, SpectralWorkspace& ws);

}  // namespace skdv::num
