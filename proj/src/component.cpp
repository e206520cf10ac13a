#include "skdv/component.hpp"

#include "skdv/errors.hpp"

#include <algorithm>

namespace skdv::sym {

CompAtom CompAtom::field_deriv(FieldSym f, int k) {
    CompAtom a;
    a.field = f;
    a.deriv = k;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%c%03d", f == FieldSym::u ? 'u' : 'x', k);
    a.key = buf;
    return a;
}

CompAtom CompAtom::antiderivative(ComponentExpr body) {
    CompAtom a;
    a.xinv = std::make_shared<const ComponentExpr>(std::move(body));
    a.key = "I(" + a.xinv->encode() + ")";
    return a;
}

Parity CompAtom::parity() const {
    if (is_xinv()) return xinv->parity();
    return field == FieldSym::xi ? Parity::odd : Parity::even;
}

namespace {

Parity term_parity(const CompTerm& t) {
    Parity p = Parity::even;
    for (const auto& a : t.atoms) p = parity_xor(p, a.parity());
    return p;
}

bool sort_atoms(std::vector<CompAtom>& atoms, Rational& coeff) {
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        for (std::size_t j = i; j > 0 && atoms[j].key < atoms[j - 1].key; --j) {
            if (atoms[j].parity() == Parity::odd && atoms[j - 1].parity() == Parity::odd)
                coeff = -coeff;
            std::swap(atoms[j], atoms[j - 1]);
        }
    }
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
        if (atoms[i] == atoms[i + 1] && atoms[i].parity() == Parity::odd) return false;
    return true;
}

std::string term_atoms_key(const CompTerm& t) {
    std::string s;
    for (const auto& a : t.atoms) s += a.key + "|";
    return s;
}

}  // namespace

void ComponentExpr::normalize() {
    std::vector<CompTerm> collected;
    collected.reserve(terms_.size());
    for (auto& t : terms_) {
        if (t.coeff == 0) continue;
        if (!sort_atoms(t.atoms, t.coeff)) continue;
        collected.push_back(std::move(t));
    }
    std::sort(collected.begin(), collected.end(), [](const CompTerm& a, const CompTerm& b) {
        return term_atoms_key(a) < term_atoms_key(b);
    });
    terms_.clear();
    for (auto& t : collected) {
        if (!terms_.empty() && term_atoms_key(terms_.back()) == term_atoms_key(t)) {
            terms_.back().coeff += t.coeff;
            if (terms_.back().coeff == 0) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

ComponentExpr ComponentExpr::atom(FieldSym f, int deriv) {
    ComponentExpr e;
    e.terms_.push_back({Rational(1), {CompAtom::field_deriv(f, deriv)}});
    return e;
}

ComponentExpr ComponentExpr::constant(Rational c) {
    ComponentExpr e;
    if (c != 0) e.terms_.push_back({std::move(c), {}});
    return e;
}

ComponentExpr ComponentExpr::from_terms(std::vector<CompTerm> terms) {
    ComponentExpr e;
    e.terms_ = std::move(terms);
    e.normalize();
    return e;
}

ComponentExpr ComponentExpr::operator+(const ComponentExpr& o) const {
    ComponentExpr out;
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    out.normalize();
    return out;
}

ComponentExpr ComponentExpr::operator-(const ComponentExpr& o) const {
    return *this + (o * Rational(-1));
}

ComponentExpr ComponentExpr::operator*(const ComponentExpr& o) const {
    ComponentExpr out;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            CompTerm t;
            t.coeff = a.coeff * b.coeff;
            t.atoms = a.atoms;
            t.atoms.insert(t.atoms.end(), b.atoms.begin(), b.atoms.end());
            out.terms_.push_back(std::move(t));
        }
    }
    out.normalize();
    return out;
}

ComponentExpr ComponentExpr::operator*(const Rational& c) const {
    ComponentExpr out;
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

bool ComponentExpr::operator==(const ComponentExpr& o) const { return encode() == o.encode(); }

ComponentExpr ComponentExpr::dx() const {
    ComponentExpr out;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            ComponentExpr da;
            if (t.atoms[i].is_xinv())
                da = *t.atoms[i].xinv;  // (dx^{-1} e)' = e
            else
                da = ComponentExpr::atom(t.atoms[i].field, t.atoms[i].deriv + 1);
            CompTerm lhs;
            lhs.coeff = t.coeff;
            lhs.atoms.assign(t.atoms.begin(), t.atoms.begin() + i);
            ComponentExpr piece = ComponentExpr::from_terms({lhs}) * da;
            if (i + 1 < t.atoms.size()) {
                CompTerm rhs;
                rhs.coeff = Rational(1);
                rhs.atoms.assign(t.atoms.begin() + i + 1, t.atoms.end());
                piece = piece * ComponentExpr::from_terms({rhs});
            }
            out = out + piece;
        }
    }
    return out;
}

ComponentExpr ComponentExpr::x_antiderivative() const {
    ComponentExpr out;
    for (const auto& t : terms_) {
        ComponentExpr body = ComponentExpr::from_terms({{Rational(1), t.atoms}});
        CompTerm wrapped;
        wrapped.coeff = t.coeff;
        wrapped.atoms = {CompAtom::antiderivative(std::move(body))};
        out = out + ComponentExpr::from_terms({wrapped});
    }
    return out;
}

Parity ComponentExpr::parity() const {
    if (terms_.empty()) return Parity::even;
    Parity p = term_parity(terms_.front());
    for (const auto& t : terms_)
        if (term_parity(t) != p) return Parity::mixed;
    return p;
}

int ComponentExpr::max_derivative() const {
    int m = 0;
    for (const auto& t : terms_)
        for (const auto& a : t.atoms)
            m = std::max(m, a.is_xinv() ? a.xinv->max_derivative() : a.deriv);
    return m;
}

std::string ComponentExpr::encode() const {
    std::string s;
    for (const auto& t : terms_)
        s += rat_to_string(t.coeff) + ":" + term_atoms_key(t) + ";";
    return s;
}

namespace {

std::string atom_to_string(const CompAtom& a) {
    if (a.is_xinv()) return "Ix(" + a.xinv->to_string() + ")";
    std::string s = (a.field == FieldSym::u) ? "u" : "xi";
    if (a.deriv > 0 && a.deriv <= 3) s += std::string(a.deriv, '\'');
    if (a.deriv > 3) s += "^(" + std::to_string(a.deriv) + ")";
    return s;
}

}  // namespace

std::string ComponentExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        std::string prod;
        for (const auto& a : t.atoms) {
            if (!prod.empty()) prod += "*";
            prod += atom_to_string(a);
        }
        if (prod.empty()) prod = "1";
        if (t.coeff == 1)
            s += prod;
        else
            s += rat_to_string(t.coeff) + "*" + prod;
    }
    return s;
}

// JSON AST: {"op":"sum","args":[{"op":"mul","coeff":"p/q","args":[atoms...]}]}
// with atoms {"field":"xi","deriv":2} or {"op":"xinv","args":[<node>]}.

nlohmann::json ComponentExpr::to_json() const {
    nlohmann::json sum = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : t.atoms) {
            if (a.is_xinv())
                args.push_back({{"op", "xinv"}, {"args", {a.xinv->to_json()}}});
            else
                args.push_back({{"field", a.field == FieldSym::u ? "u" : "xi"},
                                {"deriv", a.deriv}});
        }
        sum.push_back({{"op", "mul"}, {"coeff", rat_to_string(t.coeff)}, {"args", args}});
    }
    return {{"op", "sum"}, {"args", sum}};
}

ComponentExpr ComponentExpr::from_json(const nlohmann::json& j) {
    if (j.contains("field")) {
        FieldSym f = (j.at("field") == "u") ? FieldSym::u : FieldSym::xi;
        return ComponentExpr::atom(f, j.at("deriv").get<int>());
    }
    const std::string op = j.at("op");
    if (op == "sum") {
        ComponentExpr out;
        for (const auto& a : j.at("args")) out = out + from_json(a);
        return out;
    }
    if (op == "mul") {
        ComponentExpr out = ComponentExpr::constant(rat_from_string(j.at("coeff")));
        for (const auto& a : j.at("args")) out = out * from_json(a);
        return out;
    }
    if (op == "xinv") return from_json(j.at("args").at(0)).x_antiderivative();
    throw Error("unknown expression node op: " + op);
}

ComponentPair pair_field() {
    return {ComponentExpr::atom(FieldSym::xi), ComponentExpr::atom(FieldSym::u)};
}

ComponentPair pair_D(const ComponentPair& p) { return {p.upper, p.lower.dx()}; }

ComponentPair pair_Q(const ComponentPair& p) { return {-p.upper, p.lower.dx()}; }

ComponentPair pair_Dinv(const ComponentPair& p) {
    return {p.upper.x_antiderivative(), p.lower};
}

ComponentPair pair_dx(const ComponentPair& p) { return {p.lower.dx(), p.upper.dx()}; }

ComponentPair pair_mul(const ComponentPair& a, const ComponentPair& b) {
    // (a0 + th a1)(b0 + th b1) = a0 b0 + th((-1)^{|a0|} a0 b1 + a1 b0)
    Parity pa = a.lower.parity();
    Rational sign = (pa == Parity::odd) ? Rational(-1) : Rational(1);
    if (pa == Parity::mixed)
        throw Error("superfield product requires homogeneous factors");
    return {a.lower * b.lower, a.lower * b.upper * sign + a.upper * b.lower};
}

ComponentPair to_components(const SuperExpr& e) {
    ComponentPair out{ComponentExpr::zero(), ComponentExpr::zero()};
    for (const auto& t : e.terms()) {
        if (t.epow != 0)
            throw Error("to_components expects an eps-free expression; "
                        "extract eps orders first");
        ComponentPair prod{ComponentExpr::constant(Rational(1)), ComponentExpr::zero()};
        for (const auto& a : t.atoms) {
            ComponentPair ap;
            if (a.is_dinv()) {
                ap = pair_Dinv(to_components(*a.dinv));
            } else {
                ap = pair_field();
                if (a.q) ap = pair_Q(ap);
                for (int k = 0; k < a.dpow; ++k) ap = pair_D(ap);
            }
            prod = pair_mul(prod, ap);
        }
        out = out + prod * t.coeff;
    }
    return out;
}

std::map<int, ComponentPair> eps_components(const SuperExpr& e) {
    std::map<int, ComponentPair> out;
    for (int m = 0; m <= e.max_eps_order(); ++m) {
        SuperExpr c = e.eps_coefficient(m);
        if (c.is_zero()) continue;
        out.emplace(m, to_components(c));
    }
    return out;
}

}  // namespace skdv::sym
