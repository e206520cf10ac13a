#include "skdv/observables.hpp"

#include "skdv/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace skdv::num {

void Observables::check_contract(const FieldState& s) const {
    if (!enforce_decay_) return;
    const double r = s.boundary_residual();
    if (r > threshold_)
        throw DecayContractError("boundary decay contract violated (residual " +
                                 std::to_string(r) + ")");
}

void Observables::check_edges(const RealArray& f) const {
    if (!enforce_decay_) return;
    const double edge = std::max(std::abs(f.front()), std::abs(f.back()));
    if (edge > threshold_)
        throw DecayContractError("integrand has not decayed at the boundary");
}

LocalCharges Observables::local_charges(const FieldState& s) {
    check_contract(s);
    LocalCharges out;
    out.H_half = AlgebraElement<double>(s.xi.kind(), s.xi.generators());
    for (const auto& [idx, v] : s.xi.channels()) out.H_half.set(idx, ws_.integral(v));

    const RealArray& u = s.u.channel(MultiIndex::identity());
    out.H_1 = ws_.integral(u);

    RealArray p = body_projection_field(s.xi);
    RealArray u1 = ws_.derivative(u, 1);
    RealArray p1 = body_projection_field(ws_.derivative(s.xi, 1));

    double v = 0.0, m = 0.0;
    for (int j = 0; j < s.grid.points(); ++j) {
        v += u[j] * u[j] + p[j];
        m += -u[j] * u[j] * u[j] / 3.0 - 0.5 * u[j] * p[j] + u1[j] * u1[j] + p1[j];
    }
    out.V = 0.5 * v * s.grid.dx();
    out.M = 0.5 * m * s.grid.dx();
    return out;
}

namespace {

double h1_norm2_of_diff(const AlgebraField& a, const AlgebraField& b,
                        SpectralWorkspace& ws) {
    double n2 = 0.0;
    auto visit = [&](MultiIndex idx) {
        const RealArray& va = a.channel(idx);
        const RealArray& vb = b.channel(idx);
        RealArray d(va.size());
        for (std::size_t j = 0; j < va.size(); ++j) d[j] = va[j] - vb[j];
        RealArray d1 = ws.derivative(d, 1);
        n2 += ws.inner(d, d) + ws.inner(d1, d1);
    };
    std::set<std::uint8_t> seen;
    for (const auto& [idx, v] : a.channels()) seen.insert(idx.bits);
    for (const auto& [idx, v] : b.channels()) seen.insert(idx.bits);
    for (auto bits : seen) visit(MultiIndex(bits));
    return n2;
}

}  // namespace

double Observables::sobolev_norm(const FieldState& a, const FieldState& b) {
    if (!(a.grid == b.grid)) throw ConfigError("sobolev norm needs matching grids");
    return std::sqrt(h1_norm2_of_diff(a.u, b.u, ws_) + h1_norm2_of_diff(a.xi, b.xi, ws_));
}

double Observables::sobolev_norm0(const FieldState& s) {
    FieldState zero(s.grid, s.u.kind(), s.u.generators());
    return sobolev_norm(s, zero);
}

std::pair<bool, double> Observables::apriori_check(const FieldState& s) {
    LocalCharges c = local_charges(s);
    const double sob = sobolev_norm0(s);
    const double slack = c.V + c.M + c.V * sob / std::sqrt(2.0) - sob * sob;
    return {slack >= -1e-9, slack};
}

RealArray Observables::antiderivative(const RealArray& f) {
    check_edges(f);
    return ws_.antiderivative(f);
}

AlgebraField Observables::antiderivative_field(const AlgebraField& f) {
    AlgebraField out(f.kind(), f.generators(), f.points());
    for (const auto& [idx, v] : f.channels()) out.channel(idx) = antiderivative(v);
    return out;
}

AlgebraElement<double> Observables::nonlocal_charge_xixi(const FieldState& s) {
    check_contract(s);
    AlgebraField prod = s.xi * antiderivative_field(s.xi);
    AlgebraElement<double> out(s.xi.kind(), s.xi.generators());
    for (const auto& [idx, v] : prod.channels()) out.set(idx, ws_.integral(v));
    return out;
}

AlgebraElement<double> Observables::nonconserved_uxi(const FieldState& s) {
    check_contract(s);
    AlgebraField prod = s.u * antiderivative_field(s.xi);
    AlgebraElement<double> out(s.u.kind(), s.u.generators());
    for (const auto& [idx, v] : prod.channels()) out.set(idx, ws_.integral(v));
    return out;
}

double Observables::d_II(const FieldState& a, const FieldState& b) {
    if (!(a.grid == b.grid)) throw ConfigError("distance needs matching grids");
    const int N = a.grid.points();
    const int modes = ws_.modes();
    const double dx = a.grid.dx();

    // Shift-independent part and the correlation against integer shifts of u.
    double base = h1_norm2_of_diff(a.xi, b.xi, ws_);
    double norms = 0.0;
    Spectrum corr(modes, {0.0, 0.0});
    std::set<std::uint8_t> uch;
    for (const auto& [idx, v] : a.u.channels()) uch.insert(idx.bits);
    for (const auto& [idx, v] : b.u.channels()) uch.insert(idx.bits);
    std::vector<std::pair<Spectrum, Spectrum>> spectra;
    std::vector<MultiIndex> uidx;
    for (auto bits : uch) {
        MultiIndex idx(bits);
        Spectrum fa = ws_.forward(a.u.channel(idx));
        Spectrum fb = ws_.forward(b.u.channel(idx));
        for (int m = 0; m < modes; ++m) {
            const double k = ws_.wavenumber(m);
            const double w = 1.0 + k * k;
            corr[m] += w * fa[m] * std::conj(fb[m]);
            const double mult = (m == 0 || m == modes - 1) ? 1.0 : 2.0;
            norms += w * mult * (std::norm(fa[m]) + std::norm(fb[m]));
        }
        spectra.emplace_back(std::move(fa), std::move(fb));
        uidx.push_back(idx);
    }
    norms *= dx / N;

    // g(j) = <tau_{j dx} u_a, u_b>_{H1} for all integer shifts in one pass
    RealArray ct = ws_.inverse(corr);
    RealArray g(N);
    for (int j = 0; j < N; ++j) g[j] = ct[(N - j) % N] * dx;

    int jbest = 0;
    for (int j = 1; j < N; ++j)
        if (g[j] > g[jbest]) jbest = j;

    auto dist2_at = [&](double shift) {
        double cross = 0.0;
        for (std::size_t c = 0; c < spectra.size(); ++c) {
            const auto& [fa, fb] = spectra[c];
            for (int m = 0; m < modes; ++m) {
                const double k = ws_.wavenumber(m);
                const double w = 1.0 + k * k;
                const double mult = (m == 0 || m == modes - 1) ? 1.0 : 2.0;
                const std::complex<double> ph(std::cos(-k * shift), std::sin(-k * shift));
                cross += w * mult * std::real(fa[m] * ph * std::conj(fb[m]));
            }
        }
        cross *= dx / N;
        return base + norms - 2.0 * cross;
    };

    // Parabolic refinement of the correlation peak, then exact evaluation.
    const double gm = g[(jbest - 1 + N) % N];
    const double g0 = g[jbest];
    const double gp = g[(jbest + 1) % N];
    double offset = 0.0;
    const double denom = gm - 2.0 * g0 + gp;
    if (std::abs(denom) > 1e-300) offset = 0.5 * (gm - gp) / denom;
    offset = std::clamp(offset, -1.0, 1.0);

    double d2 = dist2_at(jbest * dx);
    d2 = std::min(d2, dist2_at((jbest + offset) * dx));
    d2 = std::min(d2, dist2_at(0.0));  // tau = identity keeps d_II <= d_I
    return std::sqrt(std::max(0.0, d2));
}

double Observables::delta_M(const FieldState& s, double soliton_speed) {
    FieldState ref = soliton_state(soliton_speed, s.grid, s.u.kind(), s.u.generators());
    Observables plain(ws_, false);
    return local_charges(s).M - plain.local_charges(ref).M;
}

ChargeReport Observables::report(const FieldState& s) {
    ChargeReport r;
    r.t = s.t;
    LocalCharges c = local_charges(s);
    r.H_half = c.H_half;
    r.H_1 = c.H_1;
    r.V = c.V;
    r.M = c.M;
    r.NL_xixi = nonlocal_charge_xixi(s);
    r.NC_uxi = nonconserved_uxi(s);
    r.sobolev = sobolev_norm0(s);
    r.apriori_slack = c.V + c.M + c.V * r.sobolev / std::sqrt(2.0) - r.sobolev * r.sobolev;
    r.boundary_residual = s.boundary_residual();
    return r;
}

std::vector<StabilityRecord> stability_experiment(const Grid& g, const StabilityParams& p) {
    struct Task {
        double delta;
        std::uint64_t seed;
        PerturbMode mode;
    };
    std::vector<Task> tasks;
    for (PerturbMode mode : p.modes)
        for (double delta : p.deltas)
            for (std::uint64_t seed : p.seeds) tasks.push_back({delta, seed, mode});

    std::vector<StabilityRecord> records(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());

    auto run_one = [&](std::size_t i) {
        const Task& task = tasks[i];
        SpectralWorkspace ws(g);
        Observables obs(ws, false);
        FieldState ref = soliton_state(p.soliton_speed, g, p.kind, p.generators);
        FieldState init = perturb(ref, task.seed, task.delta, task.mode, ws);

        StabilityRecord rec;
        rec.delta = task.delta;
        rec.seed = task.seed;
        rec.mode = task.mode;
        rec.d_I0 = obs.d_I(init, ref);
        const double m_ref = obs.local_charges(ref).M;

        BrokenRhs rhs;
        integrate(init, rhs, p.scheme, p.T, p.sample_interval, ws,
                  [&](const FieldState& s) {
                      const double dII = obs.d_II(s, ref);
                      const double dM = obs.local_charges(s).M - m_ref;
                      rec.series.push_back({s.t, dII, dM});
                      rec.sup_dII = std::max(rec.sup_dII, dII);
                  });
        records[i] = std::move(rec);
    };

    const int workers = std::max(1, p.workers);
    if (workers == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    try {
                        run_one(i);
                    } catch (...) {
                        failures[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& f : failures)
            if (f) std::rethrow_exception(f);
    }
    return records;
}

}  // namespace skdv::num
