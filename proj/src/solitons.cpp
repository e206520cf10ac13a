#include "skdv/solitons.hpp"

#include "skdv/errors.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace skdv::num {

namespace {

FieldState profile_state(const Grid& g, AlgebraKind kind, int n, double decay_threshold,
                         const std::function<double(double)>& profile) {
    const double edge = std::max(std::abs(profile(-g.half_length())),
                                 std::abs(profile(g.half_length() - g.dx())));
    if (edge > decay_threshold)
        throw DomainTooSmallError("profile has not decayed at the boundary (value " +
                                  std::to_string(edge) + ")");
    FieldState s(g, kind, n);
    RealArray& body = s.u.channel(MultiIndex::identity());
    for (int j = 0; j < g.points(); ++j) body[j] = profile(g.x(j));
    return s;
}

double rng_unit(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Smooth decaying waveform: Gaussian envelopes with mild oscillation, kept
// away from the boundary.
RealArray random_waveform(std::mt19937_64& rng, const Grid& g) {
    RealArray out(g.points(), 0.0);
    for (int b = 0; b < 3; ++b) {
        const double amp = rng_unit(rng);
        const double center = g.half_length() / 6.0 * rng_unit(rng);
        const double width = 2.0 + 0.5 * (rng_unit(rng) + 1.0);
        const double osc = 1.0 + (rng_unit(rng) + 1.0);  // wavenumber in [1, 3]
        const double phase = M_PI * rng_unit(rng);
        for (int j = 0; j < g.points(); ++j) {
            const double z = (g.x(j) - center) / width;
            out[j] += amp * std::exp(-0.5 * z * z) * std::cos(osc * g.x(j) + phase);
        }
    }
    return out;
}

void h1_normalize(RealArray& f, SpectralWorkspace& ws) {
    RealArray df = ws.derivative(f, 1);
    const double n2 = ws.inner(f, f) + ws.inner(df, df);
    const double scale = 1.0 / std::sqrt(n2);
    for (double& x : f) x *= scale;
}

}  // namespace

FieldState soliton_state(double c, const Grid& g, AlgebraKind kind, int generators,
                         double decay_threshold) {
    if (c <= 0) throw ConfigError("soliton speed must be positive");
    return profile_state(g, kind, generators, decay_threshold, [c](double x) {
        const double s = 1.0 / std::cosh(0.5 * std::sqrt(c) * x);
        return 3.0 * c * s * s;
    });
}

FieldState skdv_soliton_state(double kappa, const Grid& g, AlgebraKind kind, int generators,
                              double decay_threshold) {
    if (kappa <= 0) throw ConfigError("soliton parameter must be positive");
    return profile_state(g, kind, generators, decay_threshold, [kappa](double x) {
        const double s = 1.0 / std::cosh(kappa * x);
        return 2.0 * kappa * kappa * s * s;
    });
}

FieldState perturb(const FieldState& s, std::uint64_t seed, double delta, PerturbMode mode,
                   SpectralWorkspace& ws) {
    if (delta < 0) throw ConfigError("perturbation size must be nonnegative");
    const Grid& g = s.grid;
    FieldState out = s;
    std::mt19937_64 rng(seed);

    RealArray p = random_waveform(rng, g);
    h1_normalize(p, ws);
    RealArray& u = out.u.channel(MultiIndex::identity());
    for (int j = 0; j < g.points(); ++j) u[j] += delta * p[j];

    for (int i = 1; i <= s.xi.generators(); ++i) {
        RealArray q = random_waveform(rng, g);
        h1_normalize(q, ws);
        RealArray& xc = out.xi.channel(MultiIndex::from_labels({i}));
        for (int j = 0; j < g.points(); ++j) xc[j] += delta * q[j];
    }

    if (mode == PerturbMode::free_mode || delta == 0.0) return out;

    // Zero-mean projection per xi channel through a decaying unit-mass bump,
    // so the mean constraint and the boundary decay contract hold together.
    RealArray bump(g.points());
    for (int j = 0; j < g.points(); ++j) {
        const double z = g.x(j) / 2.0;
        bump[j] = std::exp(-0.5 * z * z);
    }
    const double bump_mass = ws.integral(bump);
    for (auto& [idx, xc] : out.xi.mutable_channels()) {
        const double mean = ws.integral(xc);
        const double a = mean / bump_mass;
        for (int j = 0; j < g.points(); ++j) xc[j] -= a * bump[j];
    }

    // Restore the quadratic charge V by adjusting the component of the
    // u-perturbation parallel to the base profile.
    const RealArray& base = s.u.channel(MultiIndex::identity());
    const double vbase = ws.inner(base, base);
    if (vbase <= 0) throw ConstraintError("constrained mode needs a nonzero base profile");

    double pxi = 0.0;
    for (const auto& [idx, xc] : out.xi.channels()) pxi += ws.inner(xc, xc);

    RealArray dev(g.points());
    for (int j = 0; j < g.points(); ++j) dev[j] = u[j] - base[j];
    const double par = ws.inner(base, dev) / vbase;
    RealArray perp(g.points());
    for (int j = 0; j < g.points(); ++j) perp[j] = dev[j] - par * base[j];
    const double pperp = ws.inner(perp, perp);

    // want (1+a)^2 vbase + pperp + pxi = vbase + P(xi_base) (base xi is zero
    // for soliton starts; kept general through V of the input state)
    double pxi_base = 0.0;
    for (const auto& [idx, xc] : s.xi.channels()) pxi_base += ws.inner(xc, xc);
    const double target = vbase + pxi_base - pperp - pxi;
    if (target <= 0)
        throw ConstraintError("charge-matching projection has no real solution");
    const double scale = std::sqrt(target / vbase);
    for (int j = 0; j < g.points(); ++j) u[j] = scale * base[j] + perp[j];

    return out;
}

}  // namespace skdv::num
