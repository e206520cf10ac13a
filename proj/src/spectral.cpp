#include "skdv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace skdv::num {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct SpectralWorkspace::Impl {
    int n = 0;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        real_buf = fftw_alloc_real(n);
        cplx_buf = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real_buf);
        fftw_free(cplx_buf);
    }
};

SpectralWorkspace::SpectralWorkspace(const Grid& grid)
    : grid_(grid), impl_(std::make_unique<Impl>(grid.points())) {}

SpectralWorkspace::~SpectralWorkspace() = default;

double SpectralWorkspace::wavenumber(int m) const {
    return m * M_PI / grid_.half_length();
}

Spectrum SpectralWorkspace::forward(const RealArray& f) {
    const int n = impl_->n;
    std::memcpy(impl_->real_buf, f.data(), n * sizeof(double));
    fftw_execute(impl_->fwd);
    Spectrum out(modes());
    for (int m = 0; m < modes(); ++m)
        out[m] = {impl_->cplx_buf[m][0], impl_->cplx_buf[m][1]};
    return out;
}

RealArray SpectralWorkspace::inverse(const Spectrum& s) {
    const int n = impl_->n;
    for (int m = 0; m < modes(); ++m) {
        impl_->cplx_buf[m][0] = s[m].real();
        impl_->cplx_buf[m][1] = s[m].imag();
    }
    fftw_execute(impl_->bwd);
    RealArray out(n);
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) out[j] = impl_->real_buf[j] * scale;
    return out;
}

RealArray SpectralWorkspace::derivative(const RealArray& f, int order) {
    if (order == 0) return f;
    Spectrum s = forward(f);
    for (int m = 0; m < modes(); ++m) {
        std::complex<double> ik(0.0, wavenumber(m));
        s[m] *= std::pow(ik, order);
    }
    if (order % 2 == 1) s[modes() - 1] = 0.0;  // Nyquist has no well-defined sign
    return inverse(s);
}

AlgebraField SpectralWorkspace::derivative(const AlgebraField& f, int order) {
    AlgebraField out(f.kind(), f.generators(), f.points());
    for (const auto& [idx, v] : f.channels()) out.channel(idx) = derivative(v, order);
    return out;
}

void SpectralWorkspace::dealias(Spectrum& s) const {
    const int cut = (2 * (grid_.points() / 2)) / 3;
    for (std::size_t m = 0; m < s.size(); ++m)
        if (static_cast<int>(m) > cut) s[m] = 0.0;
}

RealArray SpectralWorkspace::dealias(const RealArray& f) {
    Spectrum s = forward(f);
    dealias(s);
    return inverse(s);
}

void SpectralWorkspace::dealias(AlgebraField& f) {
    AlgebraField out(f.kind(), f.generators(), f.points());
    for (const auto& [idx, v] : f.channels()) out.channel(idx) = dealias(v);
    f = out;
}

RealArray SpectralWorkspace::translate(const RealArray& f, double shift) {
    Spectrum s = forward(f);
    for (int m = 0; m + 1 < modes(); ++m) {
        const double ph = -wavenumber(m) * shift;
        s[m] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    // keep the Nyquist mode real
    s[modes() - 1] *= std::cos(wavenumber(modes() - 1) * shift);
    return inverse(s);
}

RealArray SpectralWorkspace::antiderivative(const RealArray& f) {
    Spectrum s = forward(f);
    const double mean = s[0].real() / grid_.points();
    s[0] = 0.0;
    for (int m = 1; m < modes(); ++m)
        s[m] /= std::complex<double>(0.0, wavenumber(m));
    s[modes() - 1] = 0.0;
    RealArray osc = inverse(s);
    RealArray out(f.size());
    const double left = osc[0];
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double x_rel = static_cast<double>(j) * grid_.dx();
        out[j] = (osc[j] - left) + mean * x_rel;
    }
    return out;
}

double SpectralWorkspace::integral(const RealArray& f) const {
    double s = 0.0;
    for (double x : f) s += x;
    return s * grid_.dx();
}

double SpectralWorkspace::inner(const RealArray& f, const RealArray& g) const {
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
    return s * grid_.dx();
}

}  // namespace skdv::num
