#include "skdv/integrate.hpp"

#include "skdv/errors.hpp"

#include <cmath>
#include <complex>
#include <set>

namespace skdv::num {

namespace {

using Cplx = std::complex<double>;

struct ChannelLayout {
    AlgebraKind kind;
    int n = 1;
    std::vector<MultiIndex> uch, xich;
};

// Closure of the initial channel sets under the products the flows form
// (u*u and xi*xi feed u, xi*u feeds xi), so channels that fill in during the
// evolution are present from the start.
ChannelLayout make_layout(const FieldState& s) {
    ChannelLayout lay;
    lay.kind = s.u.kind();
    lay.n = s.u.generators();
    std::set<std::uint8_t> us, xs;
    us.insert(0);  // identity channel always tracked
    for (const auto& [idx, v] : s.u.channels()) us.insert(idx.bits);
    for (const auto& [idx, v] : s.xi.channels()) xs.insert(idx.bits);
    bool grew = true;
    while (grew) {
        grew = false;
        auto add = [&](std::set<std::uint8_t>& dst, MultiIndex a, MultiIndex b) {
            auto [idx, sign] = basis_mul(lay.kind, a, b);
            if (sign == 0) return;
            if (dst.insert(idx.bits).second) grew = true;
        };
        std::vector<std::uint8_t> uv(us.begin(), us.end()), xv(xs.begin(), xs.end());
        for (auto a : uv)
            for (auto b : uv) add(us, MultiIndex(a), MultiIndex(b));
        for (auto a : xv)
            for (auto b : xv) add(us, MultiIndex(a), MultiIndex(b));
        for (auto a : xv)
            for (auto b : uv) add(xs, MultiIndex(a), MultiIndex(b));
    }
    for (auto b : us) lay.uch.emplace_back(b);
    for (auto b : xs) lay.xich.emplace_back(b);
    return lay;
}

struct SVec {
    std::vector<Spectrum> u, xi;
};

void axpy(SVec& y, double a, const SVec& x) {
    for (std::size_t c = 0; c < y.u.size(); ++c)
        for (std::size_t m = 0; m < y.u[c].size(); ++m) y.u[c][m] += a * x.u[c][m];
    for (std::size_t c = 0; c < y.xi.size(); ++c)
        for (std::size_t m = 0; m < y.xi[c].size(); ++m) y.xi[c][m] += a * x.xi[c][m];
}

SVec combine(const SVec& x, double a, const SVec& k) {
    SVec out = x;
    axpy(out, a, k);
    return out;
}

void apply_multiplier(SVec& v, const std::vector<Cplx>& e) {
    for (auto& s : v.u)
        for (std::size_t m = 0; m < s.size(); ++m) s[m] *= e[m];
    for (auto& s : v.xi)
        for (std::size_t m = 0; m < s.size(); ++m) s[m] *= e[m];
}

SVec with_multiplier(const SVec& v, const std::vector<Cplx>& e) {
    SVec out = v;
    apply_multiplier(out, e);
    return out;
}

class Stepper {
public:
    Stepper(const FieldState& s0, const RhsSystem& rhs, const SchemeConfig& sc,
            SpectralWorkspace& ws, double dt)
        : rhs_(rhs), sc_(sc), ws_(ws), lay_(make_layout(s0)), dt_(dt) {
        const int nm = ws_.modes();
        lam_.resize(nm);
        e1_.resize(nm);
        eh_.resize(nm);
        for (int m = 0; m < nm; ++m) {
            const double k = ws_.wavenumber(m);
            lam_[m] = Cplx(0.0, -rhs_.linear_coeff() * k * k * k);
        }
        lam_[nm - 1] = 0.0;  // match the odd-derivative Nyquist convention
        for (int m = 0; m < nm; ++m) {
            e1_[m] = std::exp(lam_[m] * dt_);
            eh_[m] = std::exp(lam_[m] * (dt_ / 2.0));
        }
    }

    SVec to_spectral(const FieldState& s) {
        SVec v;
        for (auto idx : lay_.uch) v.u.push_back(masked(ws_.forward(s.u.channel(idx))));
        for (auto idx : lay_.xich) v.xi.push_back(masked(ws_.forward(s.xi.channel(idx))));
        return v;
    }

    FieldState to_physical(const SVec& v, double t) {
        FieldState s(ws_.grid(), lay_.kind, lay_.n);
        s.t = t;
        for (std::size_t c = 0; c < lay_.uch.size(); ++c)
            s.u.channel(lay_.uch[c]) = ws_.inverse(v.u[c]);
        for (std::size_t c = 0; c < lay_.xich.size(); ++c)
            s.xi.channel(lay_.xich[c]) = ws_.inverse(v.xi[c]);
        return s;
    }

    SVec nonlinear_hat(const SVec& v, double t) {
        FieldState s = to_physical(v, t);
        AlgebraField du(lay_.kind, lay_.n, ws_.grid().points());
        AlgebraField dxi(lay_.kind, lay_.n, ws_.grid().points());
        rhs_.nonlinear(s, ws_, du, dxi);
        check_covered(du, lay_.uch);
        check_covered(dxi, lay_.xich);
        SVec out;
        for (auto idx : lay_.uch) out.u.push_back(masked(ws_.forward(du.channel(idx))));
        for (auto idx : lay_.xich)
            out.xi.push_back(masked(ws_.forward(dxi.channel(idx))));
        return out;
    }

    SVec step(const SVec& v, double t) {
        if (sc_.method == Method::ifrk4) return step_ifrk4(v, t);
        return step_rk4(v, t);
    }

private:
    Spectrum masked(Spectrum s) const {
        if (sc_.dealias) ws_.dealias(s);
        return s;
    }

    static void check_covered(const AlgebraField& f, const std::vector<MultiIndex>& lay) {
        for (const auto& [idx, v] : f.channels()) {
            bool zero = true;
            for (double x : v)
                if (x != 0.0) {
                    zero = false;
                    break;
                }
            if (zero) continue;
            bool found = false;
            for (auto l : lay)
                if (l == idx) {
                    found = true;
                    break;
                }
            if (!found)
                throw InternalConsistencyError("rhs produced a channel outside the layout");
        }
    }

    SVec step_ifrk4(const SVec& v, double t) {
        SVec k1 = nonlinear_hat(v, t);
        SVec k2 = nonlinear_hat(with_multiplier(combine(v, dt_ / 2.0, k1), eh_),
                                t + dt_ / 2.0);
        SVec k3 = nonlinear_hat(combine(with_multiplier(v, eh_), dt_ / 2.0, k2),
                                t + dt_ / 2.0);
        SVec k4 = nonlinear_hat(
            combine(with_multiplier(v, e1_), dt_, with_multiplier(k3, eh_)), t + dt_);
        SVec out = with_multiplier(v, e1_);
        axpy(out, dt_ / 6.0, with_multiplier(k1, e1_));
        SVec k23 = k2;
        axpy(k23, 1.0, k3);
        axpy(out, dt_ / 3.0, with_multiplier(k23, eh_));
        axpy(out, dt_ / 6.0, k4);
        return out;
    }

    SVec full_hat(const SVec& v, double t) {
        SVec out = nonlinear_hat(v, t);
        for (std::size_t c = 0; c < out.u.size(); ++c)
            for (std::size_t m = 0; m < out.u[c].size(); ++m)
                out.u[c][m] += lam_[m] * v.u[c][m];
        for (std::size_t c = 0; c < out.xi.size(); ++c)
            for (std::size_t m = 0; m < out.xi[c].size(); ++m)
                out.xi[c][m] += lam_[m] * v.xi[c][m];
        return out;
    }

    SVec step_rk4(const SVec& v, double t) {
        SVec k1 = full_hat(v, t);
        SVec k2 = full_hat(combine(v, dt_ / 2.0, k1), t + dt_ / 2.0);
        SVec k3 = full_hat(combine(v, dt_ / 2.0, k2), t + dt_ / 2.0);
        SVec k4 = full_hat(combine(v, dt_, k3), t + dt_);
        SVec out = v;
        axpy(out, dt_ / 6.0, k1);
        axpy(out, dt_ / 3.0, k2);
        axpy(out, dt_ / 3.0, k3);
        axpy(out, dt_ / 6.0, k4);
        return out;
    }

    const RhsSystem& rhs_;
    const SchemeConfig& sc_;
    SpectralWorkspace& ws_;
    ChannelLayout lay_;
    double dt_;
    std::vector<Cplx> lam_, e1_, eh_;
};

}  // namespace

FieldState integrate(const FieldState& s, const RhsSystem& rhs, const SchemeConfig& scheme,
                     double T, double sample_interval, SpectralWorkspace& ws,
                     const std::function<void(const FieldState&)>& on_sample) {
    scheme.validate(s.grid);
    if (!(ws.grid() == s.grid)) throw ConfigError("workspace grid mismatch");

    const double dt = (T < 0) ? -scheme.dt : scheme.dt;
    const long nsteps = std::llround(std::abs(T) / scheme.dt);
    const long stride =
        std::max<long>(1, std::llround(std::abs(sample_interval) / scheme.dt));

    Stepper stepper(s, rhs, scheme, ws, dt);
    SVec v = stepper.to_spectral(s);
    double last_good = s.t;

    auto sample = [&](const SVec& vv, double t) {
        FieldState st = stepper.to_physical(vv, t);
        if (!st.u.finite() || !st.xi.finite())
            throw BlowUpError(last_good, "field blew up near t = " + std::to_string(t));
        last_good = t;
        if (on_sample) on_sample(st);
        return st;
    };

    sample(v, s.t);
    FieldState out = stepper.to_physical(v, s.t);
    for (long i = 1; i <= nsteps; ++i) {
        v = stepper.step(v, s.t + (i - 1) * dt);
        const double t = s.t + i * dt;
        if (i % stride == 0 || i == nsteps) out = sample(v, t);
    }
    return out;
}

std::vector<FieldState> integrate_collect(const FieldState& s, const RhsSystem& rhs,
                                          const SchemeConfig& scheme, double T,
                                          double sample_interval, SpectralWorkspace& ws) {
    std::vector<FieldState> samples;
    integrate(s, rhs, scheme, T, sample_interval, ws,
              [&](const FieldState& st) { samples.push_back(st); });
    return samples;
}

}  // namespace skdv::num
