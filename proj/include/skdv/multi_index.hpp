#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace skdv {

enum class AlgebraKind { grassmann, clifford };

enum class Parity { even, odd, mixed };

inline Parity parity_xor(Parity a, Parity b) {
    if (a == Parity::mixed || b == Parity::mixed) return Parity::mixed;
    return (a == b) ? Parity::even : Parity::odd;
}

/// Ordered word of distinct generators, stored as a bitmask over labels
/// 1..8 (bit i-1 set means generator i is present).  The empty word is the
/// identity basis element.
struct MultiIndex {
    std::uint8_t bits = 0;

    MultiIndex() = default;
    explicit MultiIndex(std::uint8_t b) : bits(b) {}

    static MultiIndex identity() { return MultiIndex{}; }

    static MultiIndex from_labels(const std::vector<int>& labels) {
        std::uint8_t b = 0;
        for (int i : labels) b = static_cast<std::uint8_t>(b | (1u << (i - 1)));
        return MultiIndex(b);
    }

    std::vector<int> labels() const {
        std::vector<int> out;
        for (int i = 0; i < 8; ++i)
            if (bits & (1u << i)) out.push_back(i + 1);
        return out;
    }

    int grade() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }
    Parity parity() const { return (grade() % 2 == 0) ? Parity::even : Parity::odd; }
    bool fits(int n) const { return (bits >> n) == 0; }

    /// "1" for the identity, else "e1e2..." / "b1b2..." by algebra kind.
    std::string name(AlgebraKind kind) const {
        if (bits == 0) return "1";
        const char* g = (kind == AlgebraKind::clifford) ? "e" : "b";
        std::string s;
        for (int i : labels()) s += g + std::to_string(i);
        return s;
    }

    auto operator<=>(const MultiIndex&) const = default;
};

/// Product of two canonical basis words.  Returns the resulting word and the
/// integer sign, with sign 0 meaning the product vanishes (Grassmann repeat).
/// Clifford contractions use e_i^2 = -1.
struct BasisProduct {
    MultiIndex index;
    int sign;  // -1, 0, +1
};

inline BasisProduct basis_mul(AlgebraKind kind, MultiIndex a, MultiIndex b) {
    const std::uint8_t rep = a.bits & b.bits;
    if (kind == AlgebraKind::grassmann && rep != 0) return {MultiIndex{}, 0};

    // Count transpositions needed to interleave word(b) into word(a):
    // generator j of b crosses every generator of a strictly greater than j.
    int swaps = 0;
    for (int j = 0; j < 8; ++j) {
        if (!(b.bits & (1u << j))) continue;
        swaps += std::popcount(static_cast<std::uint8_t>(a.bits >> (j + 1)));
    }
    int sign = (swaps % 2 == 0) ? 1 : -1;
    // Each coincident generator pair contracts to e_i^2 = -1.
    if (std::popcount(rep) % 2 == 1) sign = -sign;
    return {MultiIndex(static_cast<std::uint8_t>(a.bits ^ b.bits)), sign};
}

/// Sign of bar-conjugation on a Clifford basis word: reverse the word and
/// negate every generator, then renormalize.  bar(e_A) = s * e_A with
/// s = (-1)^{k(k+1)/2}, k = |A|.
inline int bar_sign(MultiIndex a) {
    const int k = a.grade();
    return (k * (k + 1) / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace skdv
