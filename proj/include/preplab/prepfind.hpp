#pragma once

#include "preplab/family.hpp"
#include "preplab/lines.hpp"
#include "preplab/poly.hpp"
#include "preplab/roots.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace preplab {

inline constexpr double default_merge_radius = 1e-8;

/// g^n(c) - g^k(c) as an exact polynomial in t; its roots are parameters
/// where c is (n,k)-preperiodic.
inline TPoly orbit_gap_poly(const BiPoly& g, const BigRat& c, int n, int k,
                            std::int64_t deg_cap = default_deg_cap) {
    if (!(n > k && k >= 0)) throw std::invalid_argument("orbit_gap_poly requires n > k >= 0");
    auto rec = orbit(g, c, n, deg_cap);
    return rec.values[static_cast<std::size_t>(n)] - rec.values[static_cast<std::size_t>(k)];
}

namespace detail {

inline TPoly tpoly_rem(const TPoly& a, const TPoly& b) {
    std::vector<BigRat> rem = a.coeffs();
    while (static_cast<std::int64_t>(rem.size()) - 1 >= b.degree()) {
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (static_cast<std::int64_t>(rem.size()) - 1 < b.degree()) break;
        BigRat q = rem.back() / b.leading();
        std::size_t off = rem.size() - b.coeffs().size();
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            rem[off + j] -= q * b.coeffs()[j];
    }
    return TPoly(std::move(rem));
}

inline TPoly tpoly_gcd(TPoly a, TPoly b) {
    while (!b.is_zero()) {
        TPoly r = tpoly_rem(a, b);
        a = std::move(b);
        b = (BigRat(1) / (r.is_zero() ? BigRat(1) : r.leading())) * r;  // monic keeps sizes sane
    }
    if (!a.is_zero()) a = (BigRat(1) / a.leading()) * a;
    return a;
}

/// p with all repeated factors reduced to multiplicity one: p / gcd(p, p').
/// Same root set, but simple roots, which the numeric finder locates sharply.
inline TPoly square_free_part(const TPoly& p) {
    if (p.degree() <= 1) return p;
    TPoly g = tpoly_gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    return divide_exact(p, g);
}

}  // namespace detail

/// A numerically found parameter where the marked point is preperiodic.
/// Evidence, not a certificate.
struct PrepHit {
    CNum t;
    int n = 0;
    int k = 0;
    double residual = 0;  // |gap(t)| / scale for the witnessing gap polynomial
};

/// Parameters t with g_t^n(c) = g_t^k(c) for a collision pair within reach N.
/// Pairs are scanned in lexicographic (n,k) order over (1,0) and all
/// 1 <= k < n <= N; hits keep the first witnessing pair, deduplicated by the
/// merge radius.  A purely periodic parameter of period p surfaces at
/// (p+1,1), so it is found for every N >= p+1.
inline std::vector<PrepHit> find_prep_params(const BiPoly& g, const BigRat& c, int N,
                                             double tol = default_root_tol,
                                             double merge_radius = default_merge_radius,
                                             std::int64_t deg_cap = default_deg_cap) {
    if (N < 1) throw std::invalid_argument("find_prep_params requires N >= 1");
    auto rec = orbit(g, c, N, deg_cap);
    std::vector<PrepHit> hits;
    auto scan_pair = [&](int n, int k) {
        TPoly gap = rec.values[static_cast<std::size_t>(n)] - rec.values[static_cast<std::size_t>(k)];
        if (gap.degree() < 1) return;  // identically constant gap carries no roots of interest
        auto gc = to_complex(gap);
        double scale = poly_scale(gc);
        auto sqfree = to_complex(detail::square_free_part(gap));
        for (const CNum& r : roots(sqfree, tol)) {
            bool known = false;
            for (const PrepHit& h : hits)
                if (std::abs(h.t - r) <= merge_radius) {
                    known = true;
                    break;
                }
            if (!known) hits.push_back({r, n, k, std::abs(gc.eval(r)) / scale});
        }
    };
    scan_pair(1, 0);
    for (int n = 2; n <= N; ++n)
        for (int k = 1; k < n; ++k) scan_pair(n, k);
    return hits;
}

struct EscapeGridSpec {
    double re_min, re_max, im_min, im_max;
    int width = 256, height = 256;
    int n_max = 50;
    double radius = 0;  // 0: per-cell coefficient-sum bound
};

/// cells[j*width+i] holds the first step at which the orbit of c leaves the
/// escape radius at parameter t(i,j); n_max+1 means it never escaped.
struct EscapeGrid {
    EscapeGridSpec spec;
    std::vector<int> cells;

    double t_re(int i) const {
        return spec.width > 1
                   ? spec.re_min + (spec.re_max - spec.re_min) * i / (spec.width - 1)
                   : spec.re_min;
    }
    double t_im(int j) const {
        return spec.height > 1
                   ? spec.im_min + (spec.im_max - spec.im_min) * j / (spec.height - 1)
                   : spec.im_min;
    }
};

inline EscapeGrid escape_grid(const Family& fam, const Line& line, const CNum& c,
                              const EscapeGridSpec& spec) {
    if (spec.width < 1 || spec.height < 1 || spec.width * spec.height > 4096 * 4096)
        throw std::invalid_argument("escape grid resolution out of range");
    BiPoly g = specialize_line(fam, line);
    std::vector<DensePoly<CNum>> zc;  // z-coefficients as complex polynomials in t
    for (const TPoly& tc : g.coeffs()) zc.push_back(to_complex(tc));

    EscapeGrid grid{spec, std::vector<int>(static_cast<std::size_t>(spec.width) * spec.height)};
    for (int j = 0; j < spec.height; ++j) {
        for (int i = 0; i < spec.width; ++i) {
            CNum t(grid.t_re(i), grid.t_im(j));
            std::vector<CNum> coeffs(zc.size());
            for (std::size_t q = 0; q < zc.size(); ++q) coeffs[q] = zc[q].eval(t);
            double radius = spec.radius;
            if (radius <= 0) {
                radius = 1.0;
                for (std::size_t q = 0; q + 1 < coeffs.size(); ++q) radius += std::abs(coeffs[q]);
            }
            CNum v = c;
            int cell = spec.n_max + 1;
            for (int step = 1; step <= spec.n_max; ++step) {
                CNum acc = coeffs.back();
                for (std::size_t q = coeffs.size() - 1; q-- > 0;) acc = acc * v + coeffs[q];
                v = acc;
                if (std::abs(v) > radius) {
                    cell = step;
                    break;
                }
            }
            grid.cells[static_cast<std::size_t>(j) * spec.width + i] = cell;
        }
    }
    return grid;
}

}  // namespace preplab
