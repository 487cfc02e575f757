#pragma once

#include "preplab/bigrat.hpp"
#include "preplab/family.hpp"
#include "preplab/lines.hpp"
#include "preplab/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace preplab {

struct ExpansionReport {
    int n = 0;
    std::int64_t lhs_deg = deg_neg_inf;
    std::int64_t bound = 0;
    bool pass = false;
};

namespace detail {

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace detail

/// deg_t( g^n(probe) - (g^{n-1}(probe))^d ) <= d^{n-2}(m-1) + 1.
inline ExpansionReport check_expansion_bound(const StartingPoints& c, const SigmaMap& sigma,
                                             int d, const BigRat& probe, int n,
                                             std::int64_t deg_cap = default_deg_cap) {
    if (n < 2) throw std::invalid_argument("expansion bound requires n >= 2");
    const int m = static_cast<int>(sigma.image.size()) + 1;
    auto g = specialize_line(Family(d, m), build_line(c, sigma, d));
    auto rec = orbit(g, probe, n, deg_cap);
    TPoly lhs = rec.values[static_cast<std::size_t>(n)] -
                rec.values[static_cast<std::size_t>(n - 1)].pow(static_cast<unsigned>(d));
    ExpansionReport rep;
    rep.n = n;
    rep.lhs_deg = deg_t(lhs);
    rep.bound = detail::ipow(d, n - 2) * (m - 1) + 1;
    rep.pass = rep.lhs_deg <= rep.bound;
    return rep;
}

/// deg_t( g^n(p) - w^d - t w^{m-1} - (a_2 t + b_2) w^{m-2} ) <= d^{n-2}(m-3) + 1,
/// with w = g^{n-1}(p).
inline ExpansionReport check_refined_expansion(const StartingPoints& c, const SigmaMap& sigma,
                                               int d, const BigRat& probe, int n,
                                               std::int64_t deg_cap = default_deg_cap) {
    if (n < 2) throw std::invalid_argument("refined expansion requires n >= 2");
    const int m = static_cast<int>(sigma.image.size()) + 1;
    if (m < 3) throw std::invalid_argument("refined expansion requires m >= 3");
    auto line = build_line(c, sigma, d);
    auto g = specialize_line(Family(d, m), line);
    auto rec = orbit(g, probe, n, deg_cap);
    const TPoly& w = rec.values[static_cast<std::size_t>(n - 1)];
    TPoly lhs = rec.values[static_cast<std::size_t>(n)] - w.pow(static_cast<unsigned>(d)) -
                TPoly::var() * w.pow(static_cast<unsigned>(m - 1)) -
                TPoly({line.beta[0], line.alpha[0]}) * w.pow(static_cast<unsigned>(m - 2));
    ExpansionReport rep;
    rep.n = n;
    rep.lhs_deg = deg_t(lhs);
    rep.bound = detail::ipow(d, n - 2) * (m - 3) + 1;
    rep.pass = rep.lhs_deg <= rep.bound;
    return rep;
}

/// xi := A(c_{m+1}) / A(c_m), with A the vanishing polynomial of c_1..c_{m-1}.
/// The ratio is computed unconditionally; whether it is a root of unity
/// (rationally: +-1) is reported separately by the callers that care.
inline BigRat xi_ratio(const StartingPoints& c) {
    const int m = static_cast<int>(c.c.size()) - 1;
    if (m < 2) throw std::invalid_argument("xi_ratio needs all m+1 starting points");
    auto A = vanishing_poly(c, m);
    BigRat a_cm = A.eval(c.at(m));
    if (a_cm == 0) throw std::invalid_argument("invalid probe point: A(c_m) = 0");
    return A.eval(c.at(m + 1)) / a_cm;
}

/// The final obstruction of the proof: the sigma-difference D and its closed form.
struct ObstructionReport {
    BigRat xi;
    BigRat value;              // D via Lagrange evaluations
    BigRat closed_form_value;  // (c2-c1) A(c_{m+1})/A'(c_1) * (c_m-c_{m+1}) / ((c_{m+1}-c_1)(c_m-c_1))
    BigRat a_cm;
    BigRat a_cm1;
    BigRat a_prime_c1;
    bool matches = false;      // value == closed_form_value, exactly
};

/// D := [B_{s2}(c_{m+1}) - B_{s1}(c_{m+1})] - xi [B_{s2}(c_m) - B_{s1}(c_m)]
/// with s1 = id and s2 = id except s2(1) = 2.
inline ObstructionReport sigma_difference(const StartingPoints& c, int d) {
    const int m = static_cast<int>(c.c.size()) - 1;
    if (m < 3) throw std::invalid_argument("sigma_difference requires m >= 3");
    c.require_distinct(m);
    auto A = vanishing_poly(c, m);
    ObstructionReport rep;
    rep.a_cm = A.eval(c.at(m));
    rep.a_cm1 = A.eval(c.at(m + 1));
    rep.a_prime_c1 = A.derivative().eval(c.at(1));
    if (rep.a_cm == 0) throw std::invalid_argument("invalid probe point: A(c_m) = 0");
    if (rep.a_cm1 == 0) throw std::invalid_argument("invalid probe point: A(c_{m+1}) = 0");
    rep.xi = rep.a_cm1 / rep.a_cm;

    auto s1 = SigmaMap::identity(m - 1);
    auto s2 = s1;
    s2.image[0] = 2;
    auto B1 = lagrange_B(c, s1, d);
    auto B2 = lagrange_B(c, s2, d);
    rep.value = (B2.eval(c.at(m + 1)) - B1.eval(c.at(m + 1))) -
                rep.xi * (B2.eval(c.at(m)) - B1.eval(c.at(m)));
    rep.closed_form_value = (c.at(2) - c.at(1)) * rep.a_cm1 / rep.a_prime_c1 *
                            (c.at(m) - c.at(m + 1)) /
                            ((c.at(m + 1) - c.at(1)) * (c.at(m) - c.at(1)));
    rep.matches = rep.value == rep.closed_form_value;
    return rep;
}

/// Outcome of the m = d-1 branch check.
struct Md1Report {
    BigRat xi;
    enum class Status {
        HypothesisHolds,   // xi in {1,-1} and the degree-(d-1) identity holds
        HypothesisFails,   // xi in {1,-1} but the identity fails: implication is vacuous
        SymbolicOnly       // xi not rationally a root of unity
    } status = Status::SymbolicOnly;
    bool pass = false;           // the instance-level conclusion, when applicable
    bool symbolic_pass = false;  // the rearrangement identity mod X^d - 1
};

namespace detail {

inline DensePoly<BigRat> reduce_mod_xd_minus_1(const DensePoly<BigRat>& p, int d) {
    std::vector<BigRat> c(static_cast<std::size_t>(d), BigRat(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i % d] += p.coeff(i);
    return DensePoly<BigRat>(std::move(c));
}

}  // namespace detail

/// Checks the m = d-1 branch: IF the degree-(d-1) coefficient identity
///   0 = d a^{d-1} B(c_m) - d a'^{d-1} B(c_{m+1}) + a^{d-2} - a'^{d-2}
/// holds (a = A(c_m), a' = A(c_{m+1})), THEN
///   B(c_{m+1}) - xi B(c_m) = (xi - xi^{-1}) / (d a).
/// The rearrangement is also verified symbolically with xi an indeterminate X
/// and a' = X a, as an exact identity in Q[X]/(X^d - 1).
inline Md1Report check_md1_branch(const StartingPoints& c, int d) {
    const int m = static_cast<int>(c.c.size()) - 1;
    if (m != d - 1) throw std::invalid_argument("check_md1_branch applies only when m = d-1");
    c.require_distinct(m);
    auto A = vanishing_poly(c, m);
    BigRat a = A.eval(c.at(m));
    BigRat a1 = A.eval(c.at(m + 1));
    if (a == 0 || a1 == 0) throw std::invalid_argument("probe points must avoid the roots of A");
    auto B = lagrange_B(c, SigmaMap::identity(m - 1), d);
    BigRat Bm = B.eval(c.at(m));
    BigRat Bm1 = B.eval(c.at(m + 1));

    Md1Report rep;
    rep.xi = a1 / a;

    // Symbolic rearrangement: H(X) == -d X^{d-1} a^{d-1} T(X)  mod X^d - 1, where
    // H is the hypothesis with a' = X a and T the claimed conclusion's defect.
    auto pw = [&](const BigRat& base, int e) {
        BigRat r = 1;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };
    using P = DensePoly<BigRat>;
    P H = P(BigRat(d) * pw(a, d - 1) * Bm) -
          P::monomial(BigRat(d) * pw(a, d - 1) * Bm1, static_cast<std::size_t>(d - 1)) +
          P(pw(a, d - 2)) - P::monomial(pw(a, d - 2), static_cast<std::size_t>(d - 2));
    P T = P(Bm1) - P::monomial(Bm, 1) -
          (BigRat(1) / (BigRat(d) * a)) *
              (P::monomial(1, 1) - P::monomial(1, static_cast<std::size_t>(d - 1)));
    P rhs = P::monomial(-BigRat(d) * pw(a, d - 1), static_cast<std::size_t>(d - 1)) * T;
    rep.symbolic_pass = detail::reduce_mod_xd_minus_1(H, d) == detail::reduce_mod_xd_minus_1(rhs, d);

    if (rep.xi == 1 || rep.xi == -1) {
        BigRat e6 = BigRat(d) * pw(a, d - 1) * Bm - BigRat(d) * pw(a1, d - 1) * Bm1 +
                    pw(a, d - 2) - pw(a1, d - 2);
        if (e6 != 0) {
            rep.status = Md1Report::Status::HypothesisFails;
            rep.pass = true;  // vacuous implication
        } else {
            rep.status = Md1Report::Status::HypothesisHolds;
            rep.pass = Bm1 - rep.xi * Bm == (rep.xi - BigRat(1) / rep.xi) / (BigRat(d) * a);
        }
    } else {
        rep.status = Md1Report::Status::SymbolicOnly;
        rep.pass = rep.symbolic_pass;
    }
    return rep;
}

}  // namespace preplab
