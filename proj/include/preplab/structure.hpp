#pragma once

#include "preplab/bigrat.hpp"
#include "preplab/family.hpp"
#include "preplab/poly.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace preplab {

/// mu(z) = a z + b with a != 0.
struct LinearMap {
    BigRat a;
    BigRat b;

    LinearMap(BigRat a_, BigRat b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a == 0) throw std::invalid_argument("linear map with zero leading coefficient");
    }
    static LinearMap identity() { return {1, 0}; }
    bool is_identity() const { return a == 1 && b == 0; }
    DensePoly<BigRat> to_poly() const { return DensePoly<BigRat>({b, a}); }
    LinearMap inverse() const { return {BigRat(1) / a, -b / a}; }

    friend bool operator==(const LinearMap& x, const LinearMap& y) {
        return x.a == y.a && x.b == y.b;
    }
};

/// T_d via T_0 = 2, T_1 = w, T_{k+1} = w T_k - T_{k-1}; satisfies
/// T_d(z + 1/z) = z^d + 1/z^d.
inline DensePoly<BigRat> chebyshev(int d) {
    if (d < 1) throw std::invalid_argument("chebyshev requires d >= 1");
    DensePoly<BigRat> prev({BigRat(2)}), cur = DensePoly<BigRat>::var();
    const auto w = DensePoly<BigRat>::var();
    for (int k = 1; k < d; ++k) {
        auto next = w * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Raised when normalization needs a (d-1)-th root the rationals lack.
struct field_obstruction : std::runtime_error {
    field_obstruction(BigRat radicand_, unsigned k_)
        : std::runtime_error("no rational " + std::to_string(k_) + "-th root of " +
                             rat_to_string(radicand_)),
          radicand(std::move(radicand_)),
          k(k_) {}
    BigRat radicand;
    unsigned k;
};

/// Conjugates g to normal form: returns (mu, ghat) with ghat = mu^-1 o g o mu
/// monic and with zero z^{d-1} coefficient.
inline std::pair<LinearMap, DensePoly<BigRat>> to_normal_form(const DensePoly<BigRat>& g) {
    const std::int64_t d = g.degree();
    if (d < 2) throw std::invalid_argument("to_normal_form requires degree >= 2");
    const BigRat lead = g.leading();
    const BigRat radicand = BigRat(1) / lead;
    auto a = rat_kth_root_exact(radicand, static_cast<unsigned>(d - 1));
    if (!a) throw field_obstruction(radicand, static_cast<unsigned>(d - 1));
    const BigRat b = -g.coeff(static_cast<std::size_t>(d - 1)) / (BigRat(d) * lead);
    LinearMap mu(*a, b);
    auto ghat = (BigRat(1) / mu.a) * (g.compose(mu.to_poly()) - DensePoly<BigRat>(mu.b));
    return {mu, ghat};
}

struct ExceptionalityVerdict {
    enum class Kind { PowerMap, PlusChebyshev, MinusChebyshev, NotExceptional };
    Kind kind = Kind::NotExceptional;
    std::optional<LinearMap> witness;
    /// True when no rational conjugation matches but a non-real root of unity
    /// could; the decision is then outside the rationals.
    bool undecided_over_rationals = false;
};

namespace detail {

/// Could some root of unity zeta satisfy g_j zeta^{j-1} = target_j for all j?
/// Constraints reduce to zeta^{j-1} = +-1; candidates are zeta = e^{i pi p/(d-1)}
/// checked with integer arithmetic mod 2(d-1).
inline bool unity_scaling_possible(const DensePoly<BigRat>& g, const DensePoly<BigRat>& target) {
    const std::int64_t d = g.degree();
    if (d != target.degree()) return false;
    std::vector<std::pair<std::int64_t, int>> constraints;  // (exponent, sign)
    for (std::int64_t j = 0; j <= d; ++j) {
        const BigRat& gj = g.coeff(static_cast<std::size_t>(j));
        const BigRat& tj = target.coeff(static_cast<std::size_t>(j));
        if (gj == 0 && tj == 0) continue;
        if (gj == 0 || tj == 0) return false;
        BigRat r = tj / gj;
        if (r == 1)
            constraints.emplace_back(j - 1, +1);
        else if (r == -1)
            constraints.emplace_back(j - 1, -1);
        else
            return false;  // a root of unity with rational value is +-1
    }
    const std::int64_t q = d - 1, mod = 2 * q;
    for (std::int64_t p = 0; p < mod; ++p) {  // zeta = e^{i pi p / q}
        bool ok = true;
        for (auto [e, sign] : constraints) {
            std::int64_t r = ((p * e) % mod + mod) % mod;
            if ((sign > 0 && r != 0) || (sign < 0 && r != q)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace detail

/// Decides conjugacy of a normal-form g to z^d or +-T_d.  Exact over the
/// rationals (conjugations are zeta z with zeta = +-1); flags the cases a
/// non-real root of unity could decide differently.
inline ExceptionalityVerdict is_exceptional(const DensePoly<BigRat>& g) {
    const std::int64_t d = g.degree();
    if (d < 2 || g.leading() != 1 || g.coeff(static_cast<std::size_t>(d - 1)) != 0)
        throw std::invalid_argument("is_exceptional requires normal form; call to_normal_form first");
    const auto power = DensePoly<BigRat>::monomial(1, static_cast<std::size_t>(d));
    const auto cheb = chebyshev(static_cast<int>(d));
    const auto neg_cheb = -cheb;
    using Kind = ExceptionalityVerdict::Kind;
    for (const BigRat zeta : {BigRat(1), BigRat(-1)}) {
        // (zeta z)^-1 o g o (zeta z): coefficient j scales by zeta^{j-1}
        auto conj = (BigRat(1) / zeta) * g.compose(DensePoly<BigRat>({0, zeta}));
        std::optional<Kind> kind;
        if (conj == power) kind = Kind::PowerMap;
        else if (conj == cheb) kind = Kind::PlusChebyshev;
        else if (conj == neg_cheb) kind = Kind::MinusChebyshev;
        if (kind) {
            ExceptionalityVerdict v;
            v.kind = *kind;
            v.witness = LinearMap(zeta, 0);
            return v;
        }
    }
    ExceptionalityVerdict v;
    v.undecided_over_rationals = detail::unity_scaling_possible(g, power) ||
                                 detail::unity_scaling_possible(g, cheb) ||
                                 detail::unity_scaling_possible(g, neg_cheb);
    return v;
}

template <class R>
DensePoly<R> compose_power(const DensePoly<R>& g, int n,
                           std::int64_t deg_cap = default_deg_cap) {
    if (n < 0) throw std::invalid_argument("compose_power requires n >= 0");
    auto r = DensePoly<R>::var();
    for (int i = 1; i <= n; ++i) {
        if (r.degree() > 0 && g.degree() > 0 && r.degree() * g.degree() > deg_cap)
            throw cap_exceeded(i, deg_cap);
        r = r.compose(g);
    }
    return r;
}

/// h o g^n == g^n o h, exactly.
template <class R>
bool commutes(const DensePoly<R>& h, const DensePoly<R>& g, int n,
              std::int64_t deg_cap = default_deg_cap) {
    if (n < 1) throw std::invalid_argument("commutes requires n >= 1");
    auto gn = compose_power(g, n, deg_cap);
    if (h.degree() > 0 && gn.degree() > 0 && h.degree() * gn.degree() > deg_cap)
        throw cap_exceeded(n, deg_cap);
    return h.compose(gn) == gn.compose(h);
}

/// All rational mu(z) = a z + b commuting with g^n for some n <= n_max, for
/// normal-form g.  Normal form forces b = 0; then a must satisfy a^{j-1} = 1
/// for every nonzero coefficient degree j of g^n, so a = -1 works exactly
/// when all such degrees are odd.
inline std::vector<LinearMap> linear_commutant(const DensePoly<BigRat>& g, int n_max,
                                               std::int64_t deg_cap = default_deg_cap) {
    const std::int64_t d = g.degree();
    if (d < 2 || g.leading() != 1 || g.coeff(static_cast<std::size_t>(d - 1)) != 0)
        throw std::invalid_argument("linear_commutant requires normal form");
    std::vector<LinearMap> out{LinearMap::identity()};
    bool minus = false;
    auto gn = DensePoly<BigRat>::var();
    for (int n = 1; n <= n_max && !minus; ++n) {
        if (gn.degree() > 0 && gn.degree() * d > deg_cap) break;
        gn = gn.compose(g);
        bool all_odd = true;
        for (std::size_t j = 0; j < gn.coeffs().size(); ++j)
            if (gn.coeff(j) != 0 && j % 2 == 0) all_odd = false;
        if (all_odd) minus = true;
    }
    if (minus) out.push_back(LinearMap(-1, 0));
    return out;
}

template <class R>
struct RootSearchResult {
    std::optional<DensePoly<R>> root;
    std::string witness;  // first inconsistent coefficient equation, when no root
};

namespace detail {

inline std::vector<BigRat> eth_root_candidates(const BigRat& lead, unsigned e) {
    std::vector<BigRat> out;
    if (auto r = rat_kth_root_exact(lead, e)) {
        out.push_back(*r);
        if (e % 2 == 0 && *r != 0) out.push_back(-*r);
    }
    return out;
}

inline std::vector<TPoly> eth_root_candidates(const TPoly& lead, unsigned e) {
    std::vector<TPoly> out;
    if (lead.degree() == 0)
        for (const BigRat& r : eth_root_candidates(lead.coeff(0), e)) out.push_back(TPoly(r));
    return out;
}

inline std::optional<BigRat> try_divide(const BigRat& num, const BigRat& den) {
    if (den == 0) return std::nullopt;
    return num / den;
}

inline std::optional<TPoly> try_divide(const TPoly& num, const TPoly& den) {
    if (den.is_zero()) return std::nullopt;
    if (num.is_zero()) return TPoly();
    if (num.degree() < den.degree()) return std::nullopt;
    try {
        return divide_exact(num, den);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

inline std::int64_t coeff_deg_t(const BigRat&) { return 0; }
inline std::int64_t coeff_deg_t(const TPoly& p) { return p.degree(); }

}  // namespace detail

/// Searches for h with h^e = g (composition) by undetermined coefficients,
/// matching the top s coefficients of g from the highest degree downward.
/// Each step is affine in the newest unknown; the first inconsistent equation
/// is reported when no root exists.
template <class R>
RootSearchResult<R> compositional_root(const DensePoly<R>& g, int e,
                                       std::int64_t deg_t_cap = default_deg_cap) {
    if (e < 2) throw std::invalid_argument("compositional_root requires e >= 2");
    RootSearchResult<R> res;
    const std::int64_t D = g.degree();
    if (D < 2) {
        res.witness = "degree below 2";
        return res;
    }
    auto s_opt = int_kth_root_exact(BigInt(D), static_cast<unsigned>(e));
    if (!s_opt) {
        res.witness = "deg g = " + std::to_string(D) + " is not a perfect " +
                      std::to_string(e) + "-th power";
        return res;
    }
    const std::int64_t s = static_cast<std::int64_t>(*s_opt);
    std::int64_t E = 0, p = 1;  // E = 1 + s + ... + s^{e-1}
    for (int i = 0; i < e; ++i) {
        E += p;
        p *= s;
    }
    auto leads = detail::eth_root_candidates(g.leading(), static_cast<unsigned>(E));
    if (leads.empty()) {
        res.witness = "leading coefficient has no rational " + std::to_string(E) + "-th root";
        return res;
    }
    for (const R& lead : leads) {
        std::vector<R> hc(static_cast<std::size_t>(s) + 1, ring_traits<R>::zero());
        hc[static_cast<std::size_t>(s)] = lead;
        bool failed = false;
        for (std::int64_t k = 1; k <= s && !failed; ++k) {
            const std::size_t slot = static_cast<std::size_t>(s - k);
            const std::size_t tau = static_cast<std::size_t>(p) - static_cast<std::size_t>(k);
            hc[slot] = ring_traits<R>::zero();
            DensePoly<R> h0(hc);
            auto H0 = h0;
            for (int i = 1; i < e; ++i) H0 = H0.compose(h0);
            hc[slot] = ring_traits<R>::one();
            DensePoly<R> h1(hc);
            auto H1 = h1;
            for (int i = 1; i < e; ++i) H1 = H1.compose(h1);
            R L = H1.coeff(tau) - H0.coeff(tau);
            R rhs = g.coeff(tau) - H0.coeff(tau);
            if (ring_traits<R>::is_zero(L)) {
                hc[slot] = ring_traits<R>::zero();
                if (!ring_traits<R>::is_zero(rhs)) {
                    res.witness = "coefficient of degree " + std::to_string(tau) +
                                  ": equation 0 * a = rhs with nonzero rhs";
                    failed = true;
                }
                continue;
            }
            auto a = detail::try_divide(rhs, L);
            if (!a || detail::coeff_deg_t(*a) > deg_t_cap) {
                res.witness = "coefficient of degree " + std::to_string(tau) +
                              ": linear equation has no admissible solution";
                failed = true;
                continue;
            }
            hc[slot] = *a;
        }
        if (failed) continue;
        DensePoly<R> h(hc);
        auto He = h;
        for (int i = 1; i < e; ++i) He = He.compose(h);
        if (He == g) {
            res.root = h;
            res.witness.clear();
            return res;
        }
        for (std::int64_t j = std::max(He.degree(), g.degree()); j >= 0; --j) {
            if (He.coeff(static_cast<std::size_t>(j)) != g.coeff(static_cast<std::size_t>(j))) {
                res.witness = "coefficient of degree " + std::to_string(j) +
                              " cannot be matched by any choice of lower coefficients";
                break;
            }
        }
    }
    return res;
}

}  // namespace preplab
