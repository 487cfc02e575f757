#include "preplab/poly.hpp"
#include "preplab/serialize.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace preplab;

namespace {

using P = DensePoly<BigRat>;

P random_poly(std::mt19937_64& rng, int max_deg, int max_abs = 9) {
    std::uniform_int_distribution<int> dd(0, max_deg), dc(-max_abs, max_abs), den(1, 4);
    std::vector<BigRat> c(static_cast<std::size_t>(dd(rng)) + 1);
    for (auto& x : c) x = make_rat(dc(rng), den(rng));
    return P(std::move(c));
}

}  // namespace

TEST_CASE("multiplication matches hand expansions") {
    P zm1({-1, 1}), zm2({-2, 1});
    CHECK(zm1 * zm2 == P({2, -3, 1}));
    P p({3, 0, 5, 1});
    CHECK(p * P::one() == p);
    CHECK(P({1, 1}) * P({-1, 1}) == P({-1, 0, 1}));
}

TEST_CASE("composition matches hand expansions") {
    P p({3, -1, 2});
    CHECK(p.compose(P::var()) == p);
    P zsq = P::monomial(1, 2);
    CHECK(zsq.compose(zsq) == P::monomial(1, 4));
    CHECK(P({1, 0, 1}).compose(P({1, 1})) == P({2, 2, 1}));
}

TEST_CASE("derivative") {
    CHECK(P({2, -3, 1}).derivative() == P({-3, 2}));
    CHECK(P({7}).derivative() == P::zero());
    CHECK(P::monomial(1, 5).derivative() == P::monomial(5, 4));
}

TEST_CASE("degree sentinel") {
    CHECK(P::zero().degree() == deg_neg_inf);
    CHECK(TPoly({0, 1, 1}).degree() == 2);
    CHECK(TPoly(BigRat(5)).degree() == 0);
    CHECK(deg_neg_inf != -1);
}

TEST_CASE("bipoly orbit step") {
    // g = z^2 + t
    BiPoly g({TPoly::var(), TPoly(), TPoly::one()});
    CHECK(bipoly_orbit_step(g, TPoly::var()) == TPoly({0, 1, 1}));
    // constant substitution: g(2) = t + 4
    CHECK(bipoly_orbit_step(g, TPoly(BigRat(2))) == TPoly({4, 1}));
    // g = A(z) t + B(z) with A(c) = 0 gives the constant B(c):
    // g2 = (z - 1) t + z^2 has A(1) = 0, so g2(1) = 1 identically
    BiPoly g2({TPoly({0, -1}), TPoly({0, 1}), TPoly::one()});
    CHECK(bipoly_orbit_step(g2, TPoly(BigRat(1))) == TPoly(BigRat(1)));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        P a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("degree is additive over an integral domain") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 50; ++it) {
        P a = random_poly(rng, 8), b = random_poly(rng, 8);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("composition is associative") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 20; ++it) {
        P a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
    }
}

TEST_CASE("rational results stay canonical") {
    std::mt19937_64 rng(10);
    for (int it = 0; it < 100; ++it) {
        P a = random_poly(rng, 5), b = random_poly(rng, 5);
        P r = a * b + a - b;
        for (const BigRat& q : r.coeffs()) {
            CHECK(rat_den(q) >= 1);
            CHECK(gcd(rat_num(q) < 0 ? BigInt(-rat_num(q)) : rat_num(q), rat_den(q)) == 1);
        }
    }
}

TEST_CASE("karatsuba agrees with schoolbook") {
    std::mt19937_64 rng(11);
    auto saved = karatsuba_threshold();
    for (int it = 0; it < 10; ++it) {
        P a = random_poly(rng, 90), b = random_poly(rng, 70);
        karatsuba_threshold() = 1u << 30;  // force schoolbook
        P ref = a * b;
        karatsuba_threshold() = 4;  // force karatsuba
        CHECK(a * b == ref);
    }
    karatsuba_threshold() = saved;
}

TEST_CASE("exact division") {
    P a({2, -3, 1});
    CHECK(divide_exact(a, P({-1, 1})) == P({-2, 1}));
    CHECK_THROWS_AS(divide_exact(P({1, 0, 0, 0, 1}), P({1, 1, 1})), std::invalid_argument);
}

TEST_CASE("text and json serialization round-trip") {
    P p({make_rat(1, 2), BigRat(0), BigRat(-3)});
    CHECK(poly_to_string(p) == "1/2 + 0*x + -3*x^2");
    CHECK(poly_from_string(poly_to_string(p)) == p);
    CHECK(poly_to_string(P::zero()) == "0");
    CHECK(poly_from_string("0") == P::zero());
    CHECK(poly_from_json(poly_to_json(p)) == p);
    std::mt19937_64 rng(12);
    for (int it = 0; it < 30; ++it) {
        P q = random_poly(rng, 7);
        CHECK(poly_from_string(poly_to_string(q)) == q);
        CHECK(poly_from_json(poly_to_json(q)) == q);
    }
}
