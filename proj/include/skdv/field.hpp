#pragma once

#include "skdv/algebra.hpp"
#include "skdv/errors.hpp"
#include "skdv/multi_index.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace skdv::num {

using RealArray = std::vector<double>;

/// Uniform periodic grid on [-L, L).
class Grid {
public:
    Grid(double half_length, int points) : L_(half_length), N_(points) {
        if (N_ < 64 || (N_ & (N_ - 1)) != 0)
            throw ConfigError("grid size must be a power of two, at least 64");
        if (L_ <= 0) throw ConfigError("half-length must be positive");
    }

    double half_length() const { return L_; }
    int points() const { return N_; }
    double dx() const { return 2.0 * L_ / N_; }
    double x(int j) const { return -L_ + j * dx(); }
    double length() const { return 2.0 * L_; }

    bool operator==(const Grid& o) const { return L_ == o.L_ && N_ == o.N_; }

private:
    double L_;
    int N_;
};

/// Algebra-valued grid function stored channel-wise: the algebra is a finite
/// free module over the reals, so every linear operation acts per channel and
/// products reduce to signed channel convolutions via the basis table.
class AlgebraField {
public:
    AlgebraField(AlgebraKind kind, int n, int npoints)
        : kind_(kind), n_(n), npoints_(npoints) {}

    AlgebraKind kind() const { return kind_; }
    int generators() const { return n_; }
    int points() const { return npoints_; }

    const std::map<MultiIndex, RealArray>& channels() const { return ch_; }
    std::map<MultiIndex, RealArray>& mutable_channels() { return ch_; }

    bool has(MultiIndex idx) const { return ch_.count(idx) != 0; }

    RealArray& channel(MultiIndex idx) {
        if (!idx.fits(n_)) throw Error("multi-index exceeds generator count");
        auto it = ch_.find(idx);
        if (it == ch_.end())
            it = ch_.emplace(idx, RealArray(npoints_, 0.0)).first;
        return it->second;
    }

    const RealArray& channel(MultiIndex idx) const {
        static const RealArray empty;
        auto it = ch_.find(idx);
        if (it == ch_.end()) {
            if (zero_.size() != static_cast<std::size_t>(npoints_))
                zero_.assign(npoints_, 0.0);
            return zero_;
        }
        return it->second;
    }

    bool is_zero() const {
        for (const auto& [idx, v] : ch_)
            for (double x : v)
                if (x != 0.0) return false;
        return true;
    }

    Parity parity() const {
        Parity p = Parity::even;
        bool first = true;
        for (const auto& [idx, v] : ch_) {
            if (first) {
                p = idx.parity();
                first = false;
            } else if (idx.parity() != p) {
                return Parity::mixed;
            }
        }
        return p;
    }

    AlgebraElement<double> at(int j) const {
        AlgebraElement<double> e(kind_, n_);
        for (const auto& [idx, v] : ch_) e.set(idx, v[j]);
        return e;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [idx, v] : ch_)
            for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }

    bool finite() const {
        for (const auto& [idx, v] : ch_)
            for (double x : v)
                if (!std::isfinite(x)) return false;
        return true;
    }

    AlgebraField& operator+=(const AlgebraField& o) {
        for (const auto& [idx, v] : o.ch_) {
            RealArray& dst = channel(idx);
            for (int j = 0; j < npoints_; ++j) dst[j] += v[j];
        }
        return *this;
    }

    AlgebraField& operator*=(double s) {
        for (auto& [idx, v] : ch_)
            for (double& x : v) x *= s;
        return *this;
    }

    AlgebraField operator+(const AlgebraField& o) const {
        AlgebraField out = *this;
        out += o;
        return out;
    }

    AlgebraField operator-(const AlgebraField& o) const {
        AlgebraField out = *this;
        AlgebraField neg = o;
        neg *= -1.0;
        out += neg;
        return out;
    }

    AlgebraField operator*(double s) const {
        AlgebraField out = *this;
        out *= s;
        return out;
    }

    /// Pointwise algebra product.
    AlgebraField operator*(const AlgebraField& o) const {
        if (kind_ != o.kind_ || n_ != o.n_)
            throw IncompatibleAlgebraError("field algebras differ");
        AlgebraField out(kind_, n_, npoints_);
        for (const auto& [ia, va] : ch_) {
            for (const auto& [ib, vb] : o.ch_) {
                auto [idx, sign] = basis_mul(kind_, ia, ib);
                if (sign == 0) continue;
                RealArray& dst = out.channel(idx);
                const double s = sign;
                for (int j = 0; j < npoints_; ++j) dst[j] += s * va[j] * vb[j];
            }
        }
        return out;
    }

    /// Drops channels that are identically zero.
    void prune() {
        for (auto it = ch_.begin(); it != ch_.end();) {
            bool zero = true;
            for (double x : it->second)
                if (x != 0.0) {
                    zero = false;
                    break;
                }
            it = zero ? ch_.erase(it) : ++it;
        }
    }

private:
    AlgebraKind kind_;
    int n_;
    int npoints_;
    std::map<MultiIndex, RealArray> ch_;
    mutable RealArray zero_;
};

/// Identity component of field * bar(field), computed pointwise through the
/// basis table (the definitional product route, vectorized per channel).
RealArray body_projection_field(const AlgebraField& xi);

/// Periodic state: even/real field u and odd field xi at a common time.
struct FieldState {
    Grid grid;
    double t = 0.0;
    AlgebraField u;
    AlgebraField xi;

    FieldState(const Grid& g, AlgebraKind kind, int n)
        : grid(g), u(kind, n, g.points()), xi(kind, n, g.points()) {}

    /// Enforces the parity discipline: u even, xi odd.
    void check_parity() const {
        if (u.parity() == Parity::odd || u.parity() == Parity::mixed)
            throw Error("u must be even-graded");
        if (xi.parity() == Parity::even && !xi.channels().empty())
            throw Error("xi must be odd-graded");
        if (xi.parity() == Parity::mixed) throw Error("xi must be odd-graded");
    }

    /// Largest |field| over the two cells nearest each boundary.
    double boundary_residual() const {
        double m = 0.0;
        const int N = grid.points();
        for (const auto* f : {&u, &xi})
            for (const auto& [idx, v] : f->channels())
                for (int j : {0, 1, N - 2, N - 1}) m = std::max(m, std::abs(v[j]));
        return m;
    }
};

}  // namespace skdv::num
