#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "skdv/algebra.hpp"

#include <json.hpp>

using namespace skdv;
using CliffR = AlgebraElement<Rational>;
using GrassR = AlgebraElement<Rational>;

namespace {

AlgebraElement<Rational> rand_graded(std::uint64_t seed, int n, AlgebraKind kind) {
    // alternate parities per seed to mix graded cases
    Parity p = (seed % 2 == 0) ? Parity::even : Parity::odd;
    return random_element_rational(seed, p, n, kind);
}

}  // namespace

TEST_CASE("generator products") {
    auto e1 = CliffR::generator(AlgebraKind::clifford, 2, 1);
    auto one = CliffR::scalar(AlgebraKind::clifford, 2, 1);

    CHECK(e1 * e1 == -one);  // e_i^2 = -1

    auto b1 = GrassR::generator(AlgebraKind::grassmann, 2, 1);
    CHECK((b1 * b1).is_zero());  // odd generator squares to zero

    auto e12 = CliffR::basis(AlgebraKind::clifford, 2, MultiIndex::from_labels({1, 2}));
    CHECK(e12 * e12 == -one);
    CHECK(e12 * e12 == oracle::mul_reference(e12, e12));
}

TEST_CASE("clifford relation and anticommutation, n <= 8") {
    for (AlgebraKind kind : {AlgebraKind::clifford, AlgebraKind::grassmann}) {
        const int n = 8;
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                auto ei = CliffR::generator(kind, n, i);
                auto ej = CliffR::generator(kind, n, j);
                auto anti = ei * ej + ej * ei;
                if (i != j) {
                    CHECK(anti.is_zero());
                    CHECK(ei * ej == -(ej * ei));
                } else if (kind == AlgebraKind::clifford) {
                    CHECK(anti == CliffR::scalar(kind, n, -2));
                } else {
                    CHECK(anti.is_zero());
                }
            }
        }
    }
}

TEST_CASE("product matches the word-normalization reference on all basis pairs") {
    for (AlgebraKind kind : {AlgebraKind::clifford, AlgebraKind::grassmann}) {
        const int n = 4;
        for (int a = 0; a < (1 << n); ++a) {
            for (int b = 0; b < (1 << n); ++b) {
                auto ea = CliffR::basis(kind, n, MultiIndex(std::uint8_t(a)));
                auto eb = CliffR::basis(kind, n, MultiIndex(std::uint8_t(b)));
                CHECK(ea * eb == oracle::mul_reference(ea, eb));
            }
        }
    }
}

TEST_CASE("associativity on 1000 random rational triples") {
    for (AlgebraKind kind : {AlgebraKind::clifford, AlgebraKind::grassmann}) {
        for (int t = 0; t < 1000; ++t) {
            int n = 2 + (t % 3);  // n in {2,3,4}
            auto a = rand_graded(3 * t + 1, n, kind);
            auto b = rand_graded(3 * t + 2, n, kind);
            auto c = rand_graded(3 * t + 3, n, kind);
            REQUIRE((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("parity grading") {
    for (AlgebraKind kind : {AlgebraKind::clifford, AlgebraKind::grassmann}) {
        for (int t = 0; t < 200; ++t) {
            auto a = rand_graded(2 * t, 4, kind);
            auto b = rand_graded(2 * t + 1, 4, kind);
            auto ab = a * b;
            if (ab.is_zero()) continue;
            CHECK(ab.parity() == parity_xor(a.parity(), b.parity()));
        }
    }
    auto e1 = CliffR::generator(AlgebraKind::clifford, 2, 1);
    auto one = CliffR::scalar(AlgebraKind::clifford, 2, 1);
    CHECK((e1 + one).parity() == Parity::mixed);
}

TEST_CASE("bar") {
    const int n = 3;
    auto e1 = CliffR::generator(AlgebraKind::clifford, n, 1);
    CHECK(e1.bar() == -e1);
    CHECK(CliffR::scalar(AlgebraKind::clifford, n, 1).bar() ==
          CliffR::scalar(AlgebraKind::clifford, n, 1));

    auto e12 = CliffR::basis(AlgebraKind::clifford, n, MultiIndex::from_labels({1, 2}));
    CHECK(e12.bar() == -e12);  // bar(e1 e2) = e2 e1 = -e1 e2
    CHECK(e12.bar() == oracle::bar_reference(e12));

    // anti-automorphism: bar(ab) = bar(b) bar(a)
    for (int t = 0; t < 200; ++t) {
        auto a = rand_graded(5 * t + 1, n, AlgebraKind::clifford);
        auto b = rand_graded(5 * t + 2, n, AlgebraKind::clifford);
        CHECK((a * b).bar() == b.bar() * a.bar());
        CHECK(a.bar() == oracle::bar_reference(a));
    }

    CHECK_THROWS_AS(GrassR::generator(AlgebraKind::grassmann, 2, 1).bar(),
                    UnsupportedOperationError);
}

TEST_CASE("body and soul") {
    auto one = CliffR::scalar(AlgebraKind::clifford, 2, 1);
    auto e1 = CliffR::generator(AlgebraKind::clifford, 2, 1);
    auto a = one * Rational(5) + e1 * Rational(2);
    CHECK(a.body() == 5);
    CHECK(a.soul() == e1 * Rational(2));
    CHECK(a.soul() + CliffR::scalar(AlgebraKind::clifford, 2, a.body()) == a);

    auto e12 = CliffR::basis(AlgebraKind::clifford, 2, MultiIndex::from_labels({1, 2}));
    CHECK(e12.body() == 0);
}

TEST_CASE("body projection") {
    auto e1 = CliffR::generator(AlgebraKind::clifford, 2, 1);
    auto e2 = CliffR::generator(AlgebraKind::clifford, 2, 2);
    auto xi = e1 * Rational(2) + e2 * Rational(3);
    CHECK(body_projection(xi) == 13);

    CHECK(body_projection(CliffR::zero(AlgebraKind::clifford, 2)) == 0);

    auto e12 = CliffR::basis(AlgebraKind::clifford, 2, MultiIndex::from_labels({1, 2}));
    CHECK(body_projection(e12 * Rational(2)) == 4);

    // P(xi bar xi) = sum of squared coefficients, brute force over 1000
    // random graded elements
    for (int t = 0; t < 1000; ++t) {
        auto xi_r = rand_graded(t + 17, 4, AlgebraKind::clifford);
        Rational sum = 0;
        for (const auto& [idx, c] : xi_r.terms()) sum += c * c;
        REQUIRE((xi_r * oracle::bar_reference(xi_r)).body() == sum);
        REQUIRE(body_projection(xi_r) == sum);
    }
}

TEST_CASE("random elements") {
    auto a = random_element(1, Parity::odd, 2, AlgebraKind::grassmann);
    for (const auto& [idx, c] : a.terms()) CHECK(idx.parity() == Parity::odd);
    CHECK(a.parity() == Parity::odd);

    auto b = random_element(1, Parity::odd, 2, AlgebraKind::grassmann);
    CHECK(a == b);  // same seed, same element

    auto c = random_element(2, Parity::even, 3, AlgebraKind::clifford);
    int count = 0;
    for (const auto& [idx, coeff] : c.terms()) {
        CHECK(idx.parity() == Parity::even);
        CHECK(std::abs(coeff) <= 1.0);
        ++count;
    }
    CHECK(count == 4);  // {1, e1e2, e1e3, e2e3}

    CHECK_THROWS(random_element(1, Parity::mixed, 2, AlgebraKind::grassmann));
}

TEST_CASE("incompatible algebras are rejected") {
    auto a = CliffR::generator(AlgebraKind::clifford, 2, 1);
    auto b = CliffR::generator(AlgebraKind::clifford, 3, 1);
    auto g = GrassR::generator(AlgebraKind::grassmann, 2, 1);
    CHECK_THROWS_AS(a * b, IncompatibleAlgebraError);
    CHECK_THROWS_AS(a * g, IncompatibleAlgebraError);
}

TEST_CASE("json round-trip") {
    auto x = random_element(42, Parity::odd, 3, AlgebraKind::clifford);
    auto j = to_json(x);
    CHECK(element_from_json(j) == x);
    // float coefficients survive a serialize/parse cycle through text
    auto text = j.dump();
    CHECK(element_from_json(nlohmann::json::parse(text)) == x);

    auto r = rand_graded(7, 4, AlgebraKind::grassmann);
    auto jr = to_json(r);
    CHECK(rational_element_from_json(nlohmann::json::parse(jr.dump())) == r);
}
