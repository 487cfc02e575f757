#pragma once

#include "preplab/bigrat.hpp"
#include "preplab/lines.hpp"
#include "preplab/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace preplab {

inline constexpr std::int64_t default_deg_cap = 10000;
inline constexpr int default_step_cap = 64;

/// Raised when an orbit or composition would exceed the configured degree cap.
struct cap_exceeded : std::runtime_error {
    cap_exceeded(std::int64_t step_, std::int64_t cap_)
        : std::runtime_error("degree cap " + std::to_string(cap_) +
                             " exceeded at iterate " + std::to_string(step_)),
          step(step_),
          cap(cap_) {}
    std::int64_t step;
    std::int64_t cap;
};

/// The normal-form family f(z) = z^d + t_1 z^{m-1} + ... + t_{m-1} z + t_m.
struct Family {
    int d;
    int m;

    Family(int d_, int m_) : d(d_), m(m_) {
        if (!(d > m && m >= 1 && d >= 2))
            throw std::invalid_argument("family requires d > m >= 1 and d >= 2");
    }
};

/// f with each t_i specialized to a_i.  Result is monic of degree d with zero
/// z^{d-1} coefficient.
inline DensePoly<BigRat> specialize_point(const Family& fam, const std::vector<BigRat>& a) {
    if (static_cast<int>(a.size()) != fam.m)
        throw std::invalid_argument("parameter point has wrong arity");
    std::vector<BigRat> coeffs(fam.d + 1, BigRat(0));
    coeffs[fam.d] = 1;
    for (int i = 1; i <= fam.m; ++i) coeffs[fam.m - i] = a[i - 1];
    return DensePoly<BigRat>(std::move(coeffs));
}

/// f specialized along the line: g_t(z) = z^d + t z^{m-1} + sum (a_i t + b_i) z^{m-i}.
inline BiPoly specialize_line(const Family& fam, const Line& line) {
    if (line.m() != fam.m)
        throw std::invalid_argument("line arity does not match family parameter count");
    std::vector<TPoly> zc(fam.d + 1, TPoly());
    zc[fam.d] = TPoly::one();
    zc[fam.m - 1] = zc[fam.m - 1] + TPoly::var();
    for (int i = 2; i <= fam.m; ++i)
        zc[fam.m - i] = zc[fam.m - i] + TPoly({line.beta[i - 2], line.alpha[i - 2]});
    return BiPoly(std::move(zc));
}

/// The orbit c, g(c), g^2(c), ... as exact polynomials in t.
struct OrbitRecord {
    std::vector<TPoly> values;          // values[n] = g^n(c)
    std::vector<std::int64_t> degrees;  // degrees[n] = deg_t(values[n])
};

inline OrbitRecord orbit(const BiPoly& g, const BigRat& c, int n_max,
                         std::int64_t deg_cap = default_deg_cap) {
    if (n_max < 0) throw std::invalid_argument("orbit requires n_max >= 0");
    OrbitRecord rec;
    rec.values.push_back(TPoly(c));
    rec.degrees.push_back(rec.values[0].degree());
    const std::int64_t dz = g.degree();
    for (int n = 1; n <= n_max; ++n) {
        std::int64_t prev = rec.degrees.back();
        if (prev > 0 && prev * dz > deg_cap) throw cap_exceeded(n, deg_cap);
        rec.values.push_back(bipoly_orbit_step(g, rec.values.back()));
        rec.degrees.push_back(rec.values.back().degree());
        if (rec.degrees.back() > deg_cap) throw cap_exceeded(n, deg_cap);
    }
    return rec;
}

struct DegreeLawReport {
    bool pass = true;
    std::vector<std::int64_t> degrees;   // deg_t(g^n(c)) for n = 1..n_max
    std::vector<std::int64_t> expected;
};

/// deg_t(g^n(c)) = d^{n-1} when A(c) != 0; constant orbit when A(c) = 0.
inline DegreeLawReport check_degree_law(const BiPoly& g, const DensePoly<BigRat>& A,
                                        const BigRat& c, int n_max,
                                        std::int64_t deg_cap = default_deg_cap) {
    auto rec = orbit(g, c, n_max, deg_cap);
    const std::int64_t d = g.degree();
    const bool vanishes = A.eval(c) == 0;
    DegreeLawReport rep;
    std::int64_t dn = 1;  // d^{n-1}
    for (int n = 1; n <= n_max; ++n) {
        std::int64_t want = vanishes ? 0 : dn;
        rep.expected.push_back(want);
        rep.degrees.push_back(rec.degrees[n]);
        if (rec.degrees[n] != want) rep.pass = false;
        dn *= d;
    }
    return rep;
}

/// Outcome of exact preperiodicity detection over the rationals.
struct PrepStatus {
    enum class Kind { Preperiodic, Escapes, Unknown } kind = Kind::Unknown;
    int n = 0;     // f^n(c) = f^k(c), minimal n
    int k = 0;
    int step = 0;  // first step with |value| beyond the escape radius

    static PrepStatus preperiodic(int n, int k) { return {Kind::Preperiodic, n, k, 0}; }
    static PrepStatus escapes(int s) { return {Kind::Escapes, 0, 0, s}; }
    static PrepStatus unknown() { return {}; }
};

/// Escape radius R = 1 + sum |coeff_i|, i < d, for monic p: |p(x)| > |x|
/// whenever |x| > R, so exceeding R certifies divergence.
inline BigRat escape_radius(const DensePoly<BigRat>& p) {
    BigRat r = 1;
    for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) r += rat_abs(p.coeff(i));
    return r;
}

inline PrepStatus is_preperiodic_exact(const DensePoly<BigRat>& p, const BigRat& c,
                                       int step_cap = default_step_cap) {
    if (p.degree() < 2 || p.leading() != 1)
        throw std::invalid_argument("is_preperiodic_exact requires a monic polynomial of degree >= 2");
    const BigRat radius = escape_radius(p);
    std::vector<BigRat> seen{c};
    for (int n = 1; n <= step_cap; ++n) {
        BigRat v = p.eval(seen.back());
        for (int k = 0; k < n; ++k)
            if (seen[k] == v) return PrepStatus::preperiodic(n, k);
        if (rat_abs(v) > radius) return PrepStatus::escapes(n);
        seen.push_back(std::move(v));
    }
    return PrepStatus::unknown();
}

}  // namespace preplab
