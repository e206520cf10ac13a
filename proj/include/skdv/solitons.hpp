#pragma once

#include "skdv/field.hpp"
#include "skdv/spectral.hpp"

#include <cstdint>

namespace skdv::num {

/// Traveling-wave state of the Benjamin-normalized flow: u = 3C sech^2(z),
/// z = sqrt(C) x / 2, xi = 0, centered at x = 0 at t = 0.  Rejects grids the
/// profile has not decayed on.
FieldState soliton_state(double c, const Grid& g, AlgebraKind kind = AlgebraKind::clifford,
                         int generators = 2, double decay_threshold = 1e-10);

/// Traveling wave of the +u''' convention: u = 2 kappa^2 sech^2(kappa x),
/// moving left at speed 4 kappa^2.
FieldState skdv_soliton_state(double kappa, const Grid& g, AlgebraKind kind,
                              int generators, double decay_threshold = 1e-10);

enum class PerturbMode { constrained, free_mode };

/// Adds seeded smooth decaying perturbations of size delta to u (identity
/// channel) and to every grade-1 channel of xi.  In constrained mode the
/// result keeps the quadratic charge V of the input state (to 1e-10) and has
/// zero mean in every xi channel; free mode skips both projections.
FieldState perturb(const FieldState& s, std::uint64_t seed, double delta,
                   PerturbMode mode, SpectralWorkspace& ws);

}  // namespace skdv::num
