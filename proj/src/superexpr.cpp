#include "skdv/superexpr.hpp"

#include "skdv/errors.hpp"

#include <algorithm>

namespace skdv::sym {

namespace {

std::string field_key(int dpow, bool q) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "F%03d%c", dpow, q ? 'Q' : '.');
    return buf;
}

}  // namespace

SuperAtom SuperAtom::field_word(int dpow, bool q) {
    SuperAtom a;
    a.dpow = dpow;
    a.q = q;
    a.key = field_key(dpow, q);
    return a;
}

SuperAtom SuperAtom::antiderivative(SuperExpr body) {
    SuperAtom a;
    a.dinv = std::make_shared<const SuperExpr>(std::move(body));
    a.key = "I(" + a.dinv->encode() + ")";
    return a;
}

Parity SuperAtom::parity() const {
    if (is_dinv()) return parity_xor(dinv->parity(), Parity::odd);
    // field symbol is odd; each D or Q application flips
    int flips = dpow + (q ? 1 : 0);
    return (flips % 2 == 0) ? Parity::odd : Parity::even;
}

namespace {

Parity term_parity(const SuperTerm& t) {
    Parity p = Parity::even;
    for (const auto& a : t.atoms) p = parity_xor(p, a.parity());
    return p;
}

// Sorts atoms into canonical order, tracking the graded sign; returns false
// if the term vanishes (an odd atom squared).
bool sort_atoms(std::vector<SuperAtom>& atoms, Rational& coeff) {
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

std::string term_atoms_key(const SuperTerm& t) {
    std::string s;
    for (const auto& a : t.atoms) s += a.key + "|";
    return s;
}

}  // namespace

void SuperExpr::normalize() {
    std::vector<SuperTerm> collected;
    collected.reserve(terms_.size());
    for (auto& t : terms_) {
        if (t.coeff == 0) continue;
        if (!sort_atoms(t.atoms, t.coeff)) continue;
        collected.push_back(std::move(t));
    }
    std::sort(collected.begin(), collected.end(), [](const SuperTerm& a, const SuperTerm& b) {
        if (a.epow != b.epow) return a.epow < b.epow;
        return term_atoms_key(a) < term_atoms_key(b);
    });
    terms_.clear();
    for (auto& t : collected) {
        if (!terms_.empty() && terms_.back().epow == t.epow &&
            term_atoms_key(terms_.back()) == term_atoms_key(t)) {
            terms_.back().coeff += t.coeff;
            if (terms_.back().coeff == 0) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

SuperExpr SuperExpr::field() {
    SuperExpr e;
    e.terms_.push_back({Rational(1), 0, {SuperAtom::field_word(0, false)}});
    return e;
}

SuperExpr SuperExpr::constant(Rational c) {
    SuperExpr e;
    if (c != 0) e.terms_.push_back({std::move(c), 0, {}});
    return e;
}

SuperExpr SuperExpr::from_terms(std::vector<SuperTerm> terms) {
    SuperExpr e;
    e.terms_ = std::move(terms);
    e.normalize();
    return e;
}

SuperExpr SuperExpr::operator+(const SuperExpr& o) const {
    SuperExpr out;
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    out.normalize();
    return out;
}

SuperExpr SuperExpr::operator-(const SuperExpr& o) const { return *this + (o * Rational(-1)); }

SuperExpr SuperExpr::operator*(const SuperExpr& o) const {
    SuperExpr out;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            SuperTerm t;
            t.coeff = a.coeff * b.coeff;
            t.epow = a.epow + b.epow;
            t.atoms = a.atoms;
            t.atoms.insert(t.atoms.end(), b.atoms.begin(), b.atoms.end());
            out.terms_.push_back(std::move(t));
        }
    }
    out.normalize();
    return out;
}

SuperExpr SuperExpr::operator*(const Rational& c) const {
    SuperExpr out;
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

bool SuperExpr::operator==(const SuperExpr& o) const { return encode() == o.encode(); }

SuperExpr SuperExpr::eps_shift(int m) const {
    SuperExpr out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.epow += m;
    out.normalize();
    return out;
}

SuperExpr SuperExpr::truncate_eps(int max_order) const {
    SuperExpr out;
    for (const auto& t : terms_)
        if (t.epow <= max_order) out.terms_.push_back(t);
    return out;
}

SuperExpr SuperExpr::eps_coefficient(int m) const {
    SuperExpr out;
    for (const auto& t : terms_) {
        if (t.epow != m) continue;
        SuperTerm c = t;
        c.epow = 0;
        out.terms_.push_back(std::move(c));
    }
    return out;
}

int SuperExpr::max_eps_order() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.epow);
    return m;
}

namespace {

// Applies an odd derivation: op(a1...am) = sum_i (sign of odd prefix) a1 ...
// op(a_i) ... am, where op on a single atom yields a polynomial.
template <class AtomOp>
SuperExpr odd_derivation(const SuperExpr& e, AtomOp&& atom_op) {
    SuperExpr out;
    for (const auto& t : e.terms()) {
        Parity prefix = Parity::even;
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            SuperExpr da = atom_op(t.atoms[i]);
            Rational sign = (prefix == Parity::odd) ? Rational(-1) : Rational(1);
            // term: coeff*sign * prefix-atoms * da * suffix-atoms
            SuperTerm lhs;
            lhs.coeff = t.coeff * sign;
            lhs.epow = t.epow;
            lhs.atoms.assign(t.atoms.begin(), t.atoms.begin() + i);
            SuperExpr piece = SuperExpr::from_terms({lhs}) * da;
            if (i + 1 < t.atoms.size()) {
                SuperTerm rhs;
                rhs.coeff = Rational(1);
                rhs.epow = 0;
                rhs.atoms.assign(t.atoms.begin() + i + 1, t.atoms.end());
                piece = piece * SuperExpr::from_terms({rhs});
            }
            out = out + piece;
            prefix = parity_xor(prefix, t.atoms[i].parity());
        }
    }
    return out;
}

SuperExpr single_atom(SuperAtom a, Rational coeff = Rational(1)) {
    return SuperExpr::from_terms({{std::move(coeff), 0, {std::move(a)}}});
}

}  // namespace

SuperExpr SuperExpr::D() const {
    return odd_derivation(*this, [](const SuperAtom& a) -> SuperExpr {
        if (a.is_dinv()) return *a.dinv;  // D(Dinv(e)) = e
        return single_atom(SuperAtom::field_word(a.dpow + 1, a.q));
    });
}

SuperExpr SuperExpr::Q() const {
    return odd_derivation(*this, [](const SuperAtom& a) -> SuperExpr {
        if (a.is_dinv())  // Q Dinv = -Dinv Q
            return single_atom(SuperAtom::antiderivative(a.dinv->Q()), Rational(-1));
        // Q D^k Q^q: commute Q through the D word, then contract Q^2 = -D^2.
        Rational sign = (a.dpow % 2 == 0) ? Rational(1) : Rational(-1);
        if (!a.q) return single_atom(SuperAtom::field_word(a.dpow, true), sign);
        return single_atom(SuperAtom::field_word(a.dpow + 2, false), -sign);
    });
}

SuperExpr SuperExpr::Dinv() const {
    SuperExpr out;
    for (const auto& t : terms_) {
        SuperExpr body = SuperExpr::from_terms({{Rational(1), 0, t.atoms}});
        out = out + single_atom(SuperAtom::antiderivative(std::move(body)), t.coeff)
                        .eps_shift(t.epow);
    }
    return out;
}

Parity SuperExpr::parity() const {
    if (terms_.empty()) return Parity::even;
    Parity p = term_parity(terms_.front());
    for (const auto& t : terms_)
        if (term_parity(t) != p) return Parity::mixed;
    return p;
}

std::string SuperExpr::encode() const {
    std::string s;
    for (const auto& t : terms_)
        s += "e" + std::to_string(t.epow) + ":" + rat_to_string(t.coeff) + ":" +
             term_atoms_key(t) + ";";
    return s;
}

namespace {

std::string atom_to_string(const SuperAtom& a) {
    if (a.is_dinv()) return "Dinv(" + a.dinv->to_string() + ")";
    std::string s = "Phi";
    if (a.q) s = "Q(" + s + ")";
    if (a.dpow == 1) s = "D(" + s + ")";
    if (a.dpow > 1) s = "D^" + std::to_string(a.dpow) + "(" + s + ")";
    return s;
}

}  // namespace

std::string SuperExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        s += rat_to_string(t.coeff);
        if (t.epow > 0) s += " eps^" + std::to_string(t.epow);
        for (const auto& a : t.atoms) s += " " + atom_to_string(a);
    }
    return s;
}

SuperExpr gardner_forward(const SuperExpr& e) {
    return e + e.dx().eps_shift(1) - (e * e.D()).eps_shift(2);
}

SuperExpr gardner_invert(int max_order) {
    if (max_order > 6) throw Error("series inversion supported up to order 6");
    SuperExpr chi = SuperExpr::field();
    for (int iter = 0; iter < max_order; ++iter) {
        chi = (SuperExpr::field() - chi.dx().eps_shift(1) + (chi * chi.D()).eps_shift(2))
                  .truncate_eps(max_order);
    }
    return chi;
}

}  // namespace skdv::sym
