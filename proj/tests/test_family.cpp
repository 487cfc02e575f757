#include <catch_amalgamated.hpp>

#include <preplab/family.hpp>
#include <preplab/lines.hpp>

#include <random>

using namespace preplab;
using Catch::Matchers::ContainsSubstring;

namespace {

BiPoly id_line_bipoly(std::vector<BigRat> pts, int d) {
    StartingPoints c(std::move(pts));
    int m = static_cast<int>(c.c.size()) + 1;
    SigmaMap sigma = SigmaMap::identity(m - 1);
    return specialize_line(Family(d, m), build_line(c, sigma, d));
}

}  // namespace

TEST_CASE("family validates d and m") {
    CHECK_NOTHROW(Family(2, 1));
    CHECK_NOTHROW(Family(5, 4));
    CHECK_THROWS_AS(Family(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(Family(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Family(1, 0), std::invalid_argument);
}

TEST_CASE("specialize_point substitutes parameters") {
    CHECK(specialize_point(Family(4, 3), {0, 0, 0}) ==
          DensePoly<BigRat>({0, 0, 0, 0, 1}));
    CHECK(specialize_point(Family(2, 1), {make_rat(3, 7)}) ==
          DensePoly<BigRat>({make_rat(3, 7), 0, 1}));
    // z^4 + z^2 - 14z + 14
    CHECK(specialize_point(Family(4, 3), {1, -14, 14}) ==
          DensePoly<BigRat>({14, -14, 1, 0, 1}));
    CHECK_THROWS_AS(specialize_point(Family(4, 3), {1, 2}), std::invalid_argument);
}

TEST_CASE("specialize_line produces the affine-in-t family") {
    // z^4 + t z^2 + (-3t - 14) z + (2t + 14)
    Line line{{-3, 2}, {-14, 14}};
    BiPoly g = specialize_line(Family(4, 3), line);
    CHECK(g.coeff(4) == TPoly::one());
    CHECK(g.coeff(3) == TPoly());
    CHECK(g.coeff(2) == TPoly::var());
    CHECK(g.coeff(1) == TPoly({-14, -3}));
    CHECK(g.coeff(0) == TPoly({14, 2}));

    // zero line: z^d + t z^{m-1}
    BiPoly z5 = specialize_line(Family(5, 3), Line{{0, 0}, {0, 0}});
    CHECK(z5 == BiPoly({TPoly(), TPoly(), TPoly::var(), TPoly(), TPoly(), TPoly::one()}));

    // z^3 + t z + t
    BiPoly g3 = specialize_line(Family(3, 2), Line{{1}, {0}});
    CHECK(g3 == BiPoly({TPoly::var(), TPoly::var(), TPoly(), TPoly::one()}));

    CHECK_THROWS_AS(specialize_line(Family(4, 3), Line{{1}, {0}}), std::invalid_argument);
}

TEST_CASE("orbit computes iterates as polynomials in t") {
    BiPoly g = specialize_line(Family(2, 1), Line{});  // z^2 + t
    auto rec = orbit(g, 0, 3);
    REQUIRE(rec.values.size() == 4);
    CHECK(rec.values[0] == TPoly());
    CHECK(rec.values[1] == TPoly::var());
    CHECK(rec.values[2] == TPoly({0, 1, 1}));                 // t^2 + t
    CHECK(rec.values[3] == TPoly({0, 1, 1}).pow(2) + TPoly::var());
    CHECK(rec.degrees == std::vector<std::int64_t>{deg_neg_inf, 1, 2, 4});

    auto zero_steps = orbit(g, make_rat(1, 3), 0);
    CHECK(zero_steps.values == std::vector<TPoly>{TPoly(make_rat(1, 3))});

    // starting points of an identity line stay constant
    BiPoly gl = id_line_bipoly({1, 2}, 4);
    auto fixed = orbit(gl, 1, 3);
    for (const TPoly& v : fixed.values) CHECK(v == TPoly::one());

    CHECK_THROWS_AS(orbit(g, 0, -1), std::invalid_argument);
}

TEST_CASE("orbit enforces the degree cap") {
    BiPoly g = specialize_line(Family(2, 1), Line{});
    try {
        orbit(g, 0, 20, 100);
        FAIL("expected cap_exceeded");
    } catch (const cap_exceeded& e) {
        CHECK(e.cap == 100);
        CHECK(e.step >= 7);  // deg_t reaches 64 at n=7, next would be 128
        CHECK_THAT(e.what(), ContainsSubstring("degree cap"));
    }
}

TEST_CASE("degree law on identity lines") {
    BiPoly g4 = id_line_bipoly({1, 2}, 4);
    auto A4 = decompose_AB(g4).first;

    auto rep = check_degree_law(g4, A4, 0, 3);
    CHECK(rep.pass);
    CHECK(rep.degrees == std::vector<std::int64_t>{1, 4, 16});

    auto rep_fixed = check_degree_law(g4, A4, 1, 3);
    CHECK(rep_fixed.pass);
    CHECK(rep_fixed.degrees == std::vector<std::int64_t>{0, 0, 0});

    BiPoly g3 = id_line_bipoly({1}, 3);
    auto A3 = decompose_AB(g3).first;
    auto rep3 = check_degree_law(g3, A3, 5, 3);
    CHECK(rep3.pass);
    CHECK(rep3.degrees == std::vector<std::int64_t>{1, 3, 9});
}

TEST_CASE("leading coefficient law") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> pick(-6, 6);
    BiPoly g = id_line_bipoly({1, 2, -3}, 5);
    auto A = decompose_AB(g).first;
    for (int it = 0; it < 5; ++it) {
        BigRat c = pick(rng);
        if (A.eval(c) == 0) continue;
        auto rec = orbit(g, c, 4);
        CHECK(rec.values[1].leading() == A.eval(c));
        for (int n = 2; n <= 4; ++n) {
            BigRat prev = rec.values[n - 1].leading();
            CHECK(rec.values[n].leading() == prev * prev * prev * prev * prev);
        }
    }
}

TEST_CASE("exact preperiodicity detection") {
    DensePoly<BigRat> z2m2({-2, 0, 1});
    auto s = is_preperiodic_exact(z2m2, 2);
    CHECK(s.kind == PrepStatus::Kind::Preperiodic);
    // fixed point: the minimal relation is p^1(c) = p^0(c)
    CHECK(s.n == 1);
    CHECK(s.k == 0);

    DensePoly<BigRat> z2({0, 0, 1});
    auto e = is_preperiodic_exact(z2, 2);
    CHECK(e.kind == PrepStatus::Kind::Escapes);
    CHECK(e.step == 1);

    DensePoly<BigRat> z2m1({-1, 0, 1});
    auto c = is_preperiodic_exact(z2m1, 0);
    CHECK(c.kind == PrepStatus::Kind::Preperiodic);
    CHECK(c.n == 2);
    CHECK(c.k == 0);

    // golden-mean-ish wandering point stays inside the radius for a while
    auto u = is_preperiodic_exact(z2m1, make_rat(1, 3), 4);
    CHECK(u.kind == PrepStatus::Kind::Unknown);

    CHECK_THROWS_AS(is_preperiodic_exact(DensePoly<BigRat>({1, 1}), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_preperiodic_exact(DensePoly<BigRat>({0, 0, 2}), 0),
                    std::invalid_argument);
}

TEST_CASE("escape certificates are sound") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> dd(2, 5), dc(-5, 5), dnum(-40, 40), dden(1, 5);
    for (int it = 0; it < 50; ++it) {
        int d = dd(rng);
        std::vector<BigRat> coeffs(static_cast<std::size_t>(d) + 1, BigRat(0));
        coeffs.back() = 1;
        for (int i = 0; i < d - 1; ++i) coeffs[static_cast<std::size_t>(i)] = dc(rng);
        DensePoly<BigRat> p(std::move(coeffs));
        BigRat c = make_rat(dnum(rng), dden(rng));
        // a modest step cap: rational orbit values square in size each step,
        // so undecided orbits get expensive fast
        auto s = is_preperiodic_exact(p, c, 12);
        if (s.kind != PrepStatus::Kind::Escapes) continue;
        BigRat v = c;
        for (int n = 0; n < s.step; ++n) v = p.eval(v);
        for (int extra = 0; extra < 5; ++extra) {
            BigRat w = p.eval(v);
            CHECK(rat_abs(w) > rat_abs(v));
            v = w;
        }
    }
}

TEST_CASE("normal form is preserved by specialization") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> dd(3, 6), val(-9, 9);
    for (int it = 0; it < 30; ++it) {
        int d = dd(rng);
        std::uniform_int_distribution<int> dm(1, d - 1);
        int m = dm(rng);
        Family fam(d, m);
        std::vector<BigRat> a(static_cast<std::size_t>(m));
        for (auto& x : a) x = val(rng);
        auto p = specialize_point(fam, a);
        CHECK(p.degree() == d);
        CHECK(p.leading() == 1);
        CHECK(p.coeff(static_cast<std::size_t>(d - 1)) == 0);

        Line line;
        for (int i = 2; i <= m; ++i) {
            line.alpha.push_back(val(rng));
            line.beta.push_back(val(rng));
        }
        auto g = specialize_line(fam, line);
        CHECK(g.degree() == d);
        CHECK(g.leading() == TPoly::one());
        CHECK(g.coeff(static_cast<std::size_t>(d - 1)).is_zero());
    }
}

TEST_CASE("orbit values satisfy the recursion") {
    BiPoly g = id_line_bipoly({1, -2, 4}, 5);
    auto rec = orbit(g, 3, 3);
    for (std::size_t n = 0; n + 1 < rec.values.size(); ++n)
        CHECK(rec.values[n + 1] == bipoly_orbit_step(g, rec.values[n]));
    for (std::size_t n = 0; n < rec.values.size(); ++n)
        CHECK(rec.degrees[n] == rec.values[n].degree());
}
