#pragma once

#include "skdv/field.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace skdv::num {

using Spectrum = std::vector<std::complex<double>>;  // r2c layout, N/2+1 modes

/// FFT machinery bound to one grid.  Not shareable across threads; each
/// worker owns its workspace.  Plan creation is globally serialized.
class SpectralWorkspace {
public:
    explicit SpectralWorkspace(const Grid& grid);
    ~SpectralWorkspace();

    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const Grid& grid() const { return grid_; }
    int modes() const { return grid_.points() / 2 + 1; }
    /// Wavenumber of mode m: m * pi / L.
    double wavenumber(int m) const;

    Spectrum forward(const RealArray& f);
    RealArray inverse(const Spectrum& s);

    /// k-th spectral derivative.
    RealArray derivative(const RealArray& f, int order);
    AlgebraField derivative(const AlgebraField& f, int order);

    /// Zeroes modes above two thirds of the maximum (2/3-rule dealiasing).
    void dealias(Spectrum& s) const;
    RealArray dealias(const RealArray& f);
    void dealias(AlgebraField& f);

    /// f(x - shift) via the spectral translation multiplier.
    RealArray translate(const RealArray& f, double shift);

    /// Antiderivative vanishing at the left boundary: the zero mode becomes
    /// an exact linear ramp, oscillatory modes divide by ik.
    RealArray antiderivative(const RealArray& f);

    /// Periodic quadrature of the grid function.
    double integral(const RealArray& f) const;
    /// L2 inner product int f g dx.
    double inner(const RealArray& f, const RealArray& g) const;

private:
    Grid grid_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace skdv::num
