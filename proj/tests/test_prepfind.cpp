#include <catch_amalgamated.hpp>

#include <preplab/family.hpp>
#include <preplab/prepfind.hpp>

#include <algorithm>
#include <complex>
#include <random>

using namespace preplab;

namespace {

BiPoly z2_plus_t() { return specialize_line(Family(2, 1), Line{}); }

std::vector<double> sorted_real_hits(const std::vector<PrepHit>& hits) {
    std::vector<double> out;
    for (const PrepHit& h : hits) out.push_back(h.t.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("orbit gap polynomials") {
    BiPoly g = z2_plus_t();
    CHECK(orbit_gap_poly(g, 0, 2, 1) == TPoly({0, 0, 1}));          // t^2
    CHECK(orbit_gap_poly(g, 0, 1, 0) == TPoly::var());              // t
    CHECK(orbit_gap_poly(g, 0, 3, 1) == TPoly({0, 1, 1}).pow(2));   // (t^2+t)^2
    CHECK_THROWS_AS(orbit_gap_poly(g, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(orbit_gap_poly(g, 0, 30, 0, 100), cap_exceeded);
}

TEST_CASE("root finder on factored examples") {
    using CP = DensePoly<CNum>;
    auto sorted_roots = [](const CP& p) {
        auto rs = roots(p);
        std::sort(rs.begin(), rs.end(),
                  [](const CNum& a, const CNum& b) { return a.real() < b.real(); });
        return rs;
    };

    auto r1 = sorted_roots(CP({-1, 0, 1}));  // z^2 - 1
    REQUIRE(r1.size() == 2);
    CHECK(std::abs(r1[0] - CNum(-1)) < 1e-9);
    CHECK(std::abs(r1[1] - CNum(1)) < 1e-9);

    // t^2((t+1)^2 - 1) = t^3(t+2): 0 with multiplicity 3, and -2
    auto r2 = sorted_roots(CP({0, 0, 0, 2, 1}));
    REQUIRE(r2.size() == 4);
    CHECK(std::abs(r2[0] - CNum(-2)) < 1e-9);
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(r2[static_cast<std::size_t>(i)]) < 1e-9);

    auto r3 = sorted_roots(CP({-6, 11, -6, 1}));
    REQUIRE(r3.size() == 3);
    CHECK(std::abs(r3[0] - CNum(1)) < 1e-8);
    CHECK(std::abs(r3[1] - CNum(2)) < 1e-8);
    CHECK(std::abs(r3[2] - CNum(3)) < 1e-8);
}

TEST_CASE("find_prep_params on the quadratic family") {
    BiPoly g = z2_plus_t();

    // pairs within reach: (1,0) with gap t, (2,1) with gap t^2 — t=0 only
    auto n2 = find_prep_params(g, 0, 2);
    auto v2 = sorted_real_hits(n2);
    REQUIRE(v2.size() == 1);
    CHECK(std::abs(v2[0] - 0.0) < 1e-8);
    // t = 0 surfaces first at the trivial pair (1,0)
    for (const PrepHit& h : n2)
        if (std::abs(h.t) < 1e-8) {
            CHECK(h.n == 1);
            CHECK(h.k == 0);
        }

    auto n3 = find_prep_params(g, 0, 3);
    auto v3 = sorted_real_hits(n3);
    REQUIRE(v3.size() == 3);
    CHECK(std::abs(v3[0] - (-2.0)) < 1e-8);
    CHECK(std::abs(v3[1] - (-1.0)) < 1e-8);
    CHECK(std::abs(v3[2] - 0.0) < 1e-8);
    for (const PrepHit& h : n3) {
        CHECK(h.residual < 1e-10);
        CHECK(h.n > h.k);
        CHECK(h.k >= 0);
    }

    CHECK_THROWS_AS(find_prep_params(g, 0, 0), std::invalid_argument);
}

TEST_CASE("numeric hits agree with exact preperiodicity") {
    BiPoly g = z2_plus_t();
    Family fam(2, 1);
    for (const PrepHit& h : find_prep_params(g, 0, 3)) {
        // all hits here are (near-)integers; confirm each exactly
        double rounded = std::round(h.t.real());
        REQUIRE(std::abs(h.t - CNum(rounded)) < 1e-9);
        auto p = specialize_point(fam, {BigRat(static_cast<long long>(rounded))});
        auto s = is_preperiodic_exact(p, 0);
        CHECK(s.kind == PrepStatus::Kind::Preperiodic);
    }
    // the spot check from the orbit 0 -> -2 -> 2 -> 2
    auto s = is_preperiodic_exact(specialize_point(fam, {-2}), 0);
    CHECK(s.kind == PrepStatus::Kind::Preperiodic);
    CHECK(s.n == 3);
    CHECK(s.k == 2);
}

TEST_CASE("prep hits grow monotonically with N") {
    BiPoly g = z2_plus_t();
    auto small = find_prep_params(g, 0, 2);
    auto big = find_prep_params(g, 0, 3);
    for (const PrepHit& h : small) {
        bool found = false;
        for (const PrepHit& h2 : big)
            if (std::abs(h.t - h2.t) < 1e-8) found = true;
        CHECK(found);
    }
}

TEST_CASE("escape grid cells") {
    EscapeGridSpec spec;
    spec.re_min = -2, spec.re_max = 1, spec.im_min = 0, spec.im_max = 0;
    spec.width = 4, spec.height = 1;
    spec.n_max = 50;
    spec.radius = 4;
    auto grid = escape_grid(Family(2, 1), Line{}, CNum(0), spec);
    REQUIRE(grid.cells.size() == 4);
    // columns sample t = -2, -1, 0, 1
    CHECK(grid.t_re(0) == -2.0);
    CHECK(grid.t_re(3) == 1.0);
    CHECK(grid.cells[0] == 51);  // bounded orbit 0, -2, 2, 2, ...
    CHECK(grid.cells[1] == 51);  // 2-cycle 0, -1
    CHECK(grid.cells[2] == 51);  // fixed at 0
    // t = 1: orbit 0, 1, 2, 5 first exceeds 4 at the third step
    CHECK(grid.cells[3] == 3);

    EscapeGridSpec bad = spec;
    bad.width = 5000, bad.height = 5000;
    CHECK_THROWS_AS(escape_grid(Family(2, 1), Line{}, CNum(0), bad),
                    std::invalid_argument);
}
