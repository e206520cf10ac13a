#include "skdv/evaluate.hpp"

#include "skdv/errors.hpp"

#include <cmath>
#include <random>

namespace skdv::num {

using sym::CompAtom;
using sym::ComponentExpr;
using sym::FieldSym;

const AlgebraField& Evaluation::atom_field(FieldSym f, int deriv) {
    auto key = std::make_pair(f == FieldSym::u ? 0 : 1, deriv);
    auto it = derivs_.find(key);
    if (it != derivs_.end()) return it->second;
    const AlgebraField& base = (f == FieldSym::u) ? state_.u : state_.xi;
    return derivs_.emplace(key, ws_.derivative(base, deriv)).first->second;
}

const AlgebraField& Evaluation::xinv_field(const ComponentExpr& body,
                                           const std::string& key) {
    auto it = xinvs_.find(key);
    if (it != xinvs_.end()) return it->second;
    AlgebraField inner = field_of(body);
    const int N = inner.points();
    AlgebraField out(inner.kind(), inner.generators(), N);
    for (const auto& [idx, v] : inner.channels()) {
        if (decay_threshold_ > 0) {
            const double edge = std::max(std::abs(v[0]), std::abs(v[N - 1]));
            if (edge > decay_threshold_)
                throw DecayContractError(
                    "antiderivative of a non-decaying integrand (boundary value " +
                    std::to_string(edge) + ")");
        }
        out.channel(idx) = ws_.antiderivative(v);
    }
    return xinvs_.emplace(key, std::move(out)).first->second;
}

AlgebraField Evaluation::field_of(const ComponentExpr& e) {
    const int N = state_.grid.points();
    AlgebraField out(state_.u.kind(), state_.u.generators(), N);
    for (const auto& t : e.terms()) {
        AlgebraField prod(out.kind(), out.generators(), N);
        bool first = true;
        for (const auto& a : t.atoms) {
            const AlgebraField& av =
                a.is_xinv() ? xinv_field(*a.xinv, a.key) : atom_field(a.field, a.deriv);
            if (first) {
                prod = av;
                first = false;
            } else {
                prod = prod * av;
            }
        }
        const double c = to_double(t.coeff);
        if (first) {
            // constant term: contributes c to the identity channel
            RealArray& body = prod.channel(MultiIndex::identity());
            for (int j = 0; j < N; ++j) body[j] = 1.0;
        }
        prod *= c;
        out += prod;
    }
    return out;
}

AlgebraElement<double> Evaluation::integral_of(const ComponentExpr& e) {
    AlgebraField f = field_of(e);
    AlgebraElement<double> out(f.kind(), f.generators());
    for (const auto& [idx, v] : f.channels()) out.set(idx, ws_.integral(v));
    return out;
}

namespace {

double rng_unit(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

RealArray random_bumps(std::mt19937_64& rng, const Grid& g, int bumps = 3) {
    RealArray out(g.points(), 0.0);
    for (int b = 0; b < bumps; ++b) {
        const double amp = rng_unit(rng);
        const double center = 0.25 * g.half_length() * rng_unit(rng);
        const double width = 1.5 + 0.5 * (rng_unit(rng) + 1.0);  // [1.5, 2.5]
        for (int j = 0; j < g.points(); ++j) {
            const double z = (g.x(j) - center) / width;
            out[j] += amp * std::exp(-0.5 * z * z);
        }
    }
    return out;
}

}  // namespace

EquivEnsemble EquivEnsemble::make(std::uint64_t seed, int count, int generators,
                                  double half_length, int points) {
    EquivEnsemble ens;
    ens.grid = std::make_shared<Grid>(half_length, points);
    std::mt19937_64 rng(seed);
    for (int m = 0; m < count; ++m) {
        FieldState s(*ens.grid, AlgebraKind::grassmann, generators);
        // even field: identity channel plus all grade-2 channels
        s.u.channel(MultiIndex::identity()) = random_bumps(rng, *ens.grid);
        for (int bits = 0; bits < (1 << generators); ++bits) {
            MultiIndex idx(static_cast<std::uint8_t>(bits));
            if (idx.grade() == 2) s.u.channel(idx) = random_bumps(rng, *ens.grid);
        }
        // odd field: all grade-1 channels
        for (int i = 1; i <= generators; ++i)
            s.xi.channel(MultiIndex::from_labels({i})) = random_bumps(rng, *ens.grid);
        ens.members.push_back(std::move(s));
    }
    return ens;
}

double equiv_discrepancy(const sym::SuperExpr& a, const sym::SuperExpr& b,
                         const EquivEnsemble& ensemble) {
    const ComponentExpr ia = sym::superspace_integrand(a);
    const ComponentExpr ib = sym::superspace_integrand(b);
    SpectralWorkspace ws(*ensemble.grid);
    double worst = 0.0;
    for (const auto& s : ensemble.members) {
        Evaluation ea(s, ws);
        Evaluation eb(s, ws);
        AlgebraElement<double> va = ea.integral_of(ia);
        AlgebraElement<double> vb = eb.integral_of(ib);
        worst = std::max(worst, element_norm(va - vb));
    }
    return worst;
}

bool numeric_equiv(const sym::SuperExpr& a, const sym::SuperExpr& b,
                   const EquivEnsemble& ensemble, double tol) {
    return equiv_discrepancy(a, b, ensemble) <= tol;
}

AlgebraElement<double> charge_value(const ComponentExpr& integrand, const FieldState& s,
                                    SpectralWorkspace& ws) {
    Evaluation ev(s, ws);
    return ev.integral_of(integrand);
}

sym::TotalDerivativeCheck ensemble_total_derivative_check(
    std::shared_ptr<const EquivEnsemble> ensemble, double tol) {
    return [ensemble, tol](const sym::SuperExpr& e) {
        return numeric_equiv(e, sym::SuperExpr::zero(), *ensemble, tol);
    };
}

}  // namespace skdv::num
