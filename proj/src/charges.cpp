#include "skdv/charges.hpp"

#include "skdv/errors.hpp"

namespace skdv::sym {

nlohmann::json ChargeDensity::to_json() const {
    return {{"name", name},
            {"dimension", rat_to_string(dimension)},
            {"nonlocal", nonlocal},
            {"density", component_form.to_json()}};
}

ChargeDensity ChargeDensity::from_json(const nlohmann::json& j) {
    ChargeDensity d;
    d.name = j.at("name");
    d.dimension = rat_from_string(j.at("dimension"));
    d.nonlocal = j.at("nonlocal");
    d.component_form = ComponentExpr::from_json(j.at("density"));
    return d;
}

namespace {

bool has_antiderivative(const ComponentExpr& e) {
    for (const auto& t : e.terms())
        for (const auto& a : t.atoms)
            if (a.is_xinv()) return true;
    return false;
}

std::string charge_name(const Rational& dim, bool nonlocal) {
    std::string s = nonlocal ? "HNL_" : "H";
    if (denominator(dim) == 1) return s + numerator(dim).str();
    return s + numerator(dim).str() + "_" + denominator(dim).str();
}

ChargeDensity make_density(SuperExpr density, Rational dim, bool nonlocal_family) {
    ChargeDensity d;
    d.dimension = dim;
    d.name = charge_name(dim, nonlocal_family);
    d.component_form = superspace_integrand(density);
    d.super_density = std::move(density);
    d.nonlocal = has_antiderivative(d.component_form);
    return d;
}

}  // namespace

std::vector<ChargeDensity> expand_local_charges(int max_order,
                                                const TotalDerivativeCheck& odd_check) {
    if (max_order % 2 != 0 || max_order > 6)
        throw Error("local charge expansion wants an even order at most 6");
    SuperExpr chi = gardner_invert(max_order);
    std::vector<ChargeDensity> out;
    for (int m = 0; m <= max_order; ++m) {
        SuperExpr coeff = chi.eps_coefficient(m);
        if (m % 2 == 1) {
            if (odd_check && !coeff.is_zero() && !odd_check(coeff))
                throw InternalConsistencyError(
                    "odd-order coefficient at eps^" + std::to_string(m) +
                    " is not a total derivative");
            continue;
        }
        out.push_back(make_density(std::move(coeff), Rational(m + 1), false));
    }
    return out;
}

std::vector<ChargeDensity> expand_fermionic_nonlocal(int max_order) {
    if (max_order > 2) throw Error("fermionic nonlocal expansion capped at order 2");
    SuperExpr y = gardner_invert(max_order).Dinv();
    // (exp(eps y) - 1)/eps = sum_{j>=1} eps^{j-1} y^j / j!
    SuperExpr series;
    SuperExpr ypow = SuperExpr::constant(Rational(1));
    Rational fact(1);
    for (int j = 1; j <= max_order + 1; ++j) {
        ypow = (ypow * y).truncate_eps(max_order);
        fact *= j;
        series = series + (ypow * (Rational(1) / fact)).eps_shift(j - 1);
    }
    series = series.truncate_eps(max_order);
    std::vector<ChargeDensity> out;
    for (int m = 0; m <= max_order; ++m)
        out.push_back(make_density(series.eps_coefficient(m),
                                   Rational(m) + Rational(1, 2), true));
    return out;
}

std::vector<ChargeDensity> expand_bosonic_nonlocal(int max_order) {
    if (max_order > 1) throw Error("bosonic nonlocal expansion capped at order 1");
    SuperExpr y = gardner_invert(max_order).Dinv();

    auto exp_series = [&](int sign) {
        SuperExpr series;
        SuperExpr ypow = SuperExpr::constant(Rational(1));
        Rational fact(1);
        for (int j = 1; j <= max_order + 1; ++j) {
            ypow = (ypow * y).truncate_eps(max_order);
            fact *= j;
            Rational c = Rational(1) / fact;
            if (sign < 0 && j % 2 == 1) c = -c;
            series = series + (ypow * c).eps_shift(j - 1);
        }
        return series.truncate_eps(max_order);
    };

    SuperExpr a = exp_series(+1);
    SuperExpr b = exp_series(-1);
    SuperExpr density =
        ((a.D() * b.Dinv()).Dinv() * Rational(1, 2)).truncate_eps(max_order);

    std::vector<ChargeDensity> out;
    for (int m = 0; m <= max_order; ++m)
        out.push_back(make_density(density.eps_coefficient(m), Rational(m + 1), true));
    return out;
}

SuperExpr skdv_superfield_rhs() {
    SuperExpr f = SuperExpr::field();
    return f.dx().dx().dx() + (f * f.D()).dx() * Rational(3);
}

SuperExpr gardner_superfield_rhs() {
    SuperExpr f = SuperExpr::field();
    SuperExpr cubic = (f.D() * (f * f.D()).dx()) * Rational(-3);
    return skdv_superfield_rhs() + cubic.eps_shift(2);
}

}  // namespace skdv::sym
