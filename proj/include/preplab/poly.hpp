#pragma once

#include "preplab/bigrat.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace preplab {

/// Complex floating scalar used by the numeric root finder and escape grids.
using CNum = std::complex<double>;

/// Degree of the zero polynomial.  A dedicated sentinel, never -1.
inline constexpr std::int64_t deg_neg_inf = std::numeric_limits<std::int64_t>::min();

template <class R>
struct ring_traits {
    static R zero() { return R(0); }
    static R one() { return R(1); }
    static bool is_zero(const R& x) { return x == R(0); }
};

/// Size at which multiplication switches from schoolbook to Karatsuba.
inline std::size_t& karatsuba_threshold() {
    static std::size_t thr = 32;
    return thr;
}

/// Dense univariate polynomial over a commutative ring R.
/// coeffs[i] is the coefficient of x^i; the top coefficient is nonzero
/// (the zero polynomial has an empty coefficient list).  Values are
/// immutable after construction.
template <class R>
class DensePoly {
  public:
    DensePoly() = default;
    explicit DensePoly(R constant) {
        if (!ring_traits<R>::is_zero(constant)) c_.push_back(std::move(constant));
    }
    explicit DensePoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DensePoly zero() { return DensePoly(); }
    static DensePoly one() { return DensePoly(ring_traits<R>::one()); }
    /// x
    static DensePoly var() { return monomial(ring_traits<R>::one(), 1); }
    static DensePoly monomial(R coeff, std::size_t deg) {
        if (ring_traits<R>::is_zero(coeff)) return DensePoly();
        std::vector<R> c(deg + 1, ring_traits<R>::zero());
        c[deg] = std::move(coeff);
        return DensePoly(std::move(c));
    }
    /// Monic product of (x - r) over the given roots.
    static DensePoly from_roots(const std::vector<R>& roots) {
        DensePoly p = one();
        for (const R& r : roots) p = p * DensePoly({-r, ring_traits<R>::one()});
        return p;
    }

    DensePoly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const {
        return c_.empty() ? deg_neg_inf : static_cast<std::int64_t>(c_.size()) - 1;
    }
    const std::vector<R>& coeffs() const { return c_; }
    R coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : ring_traits<R>::zero();
    }
    const R& leading() const {
        if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        std::vector<R> c(std::max(a.c_.size(), b.c_.size()), ring_traits<R>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return DensePoly(std::move(c));
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-b); }
    DensePoly operator-() const {
        std::vector<R> c = c_;
        for (R& x : c) x = -x;
        DensePoly p;
        p.c_ = std::move(c);  // negation cannot introduce a zero leading coeff
        return p;
    }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return DensePoly();
        return DensePoly(mul_rec(a.c_, b.c_));
    }
    friend DensePoly operator*(const R& s, const DensePoly& p) {
        std::vector<R> c = p.c_;
        for (R& x : c) x = s * x;
        return DensePoly(std::move(c));
    }

    DensePoly pow(unsigned e) const {
        DensePoly r = one(), base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = (e >>= 1u) ? base * base : base;
        }
        return r;
    }

    /// Horner evaluation at an element of any R-algebra.
    template <class T>
    T eval(const T& x) const {
        if (c_.empty()) return T(ring_traits<R>::zero());
        T acc(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    /// this(q); deg(p.compose(q)) = deg p * deg q for degrees >= 1.
    DensePoly compose(const DensePoly& q) const { return eval(q); }

    DensePoly derivative() const {
        if (c_.size() <= 1) return DensePoly();
        std::vector<R> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = R(static_cast<int>(i)) * c_[i];
        return DensePoly(std::move(c));
    }

    /// Exact quotient; throws if the division leaves a remainder.
    /// Requires R to be a field (or the division to be exact over it).
    friend DensePoly divide_exact(const DensePoly& a, const DensePoly& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        if (a.is_zero()) return DensePoly();
        if (a.degree() < b.degree())
            throw std::invalid_argument("inexact polynomial division");
        std::vector<R> rem = a.c_;
        std::vector<R> quot(a.c_.size() - b.c_.size() + 1, ring_traits<R>::zero());
        for (std::size_t i = quot.size(); i-- > 0;) {
            R q = rem[i + b.c_.size() - 1] / b.c_.back();
            quot[i] = q;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                rem[i + j] = rem[i + j] - q * b.c_[j];
        }
        for (const R& x : rem)
            if (!ring_traits<R>::is_zero(x))
                throw std::invalid_argument("inexact polynomial division");
        return DensePoly(std::move(quot));
    }

    template <class F>
    auto map_coeffs(F&& f) const -> DensePoly<decltype(f(std::declval<const R&>()))> {
        using S = decltype(f(std::declval<const R&>()));
        std::vector<S> c;
        c.reserve(c_.size());
        for (const R& x : c_) c.push_back(f(x));
        return DensePoly<S>(std::move(c));
    }

  private:
    void trim() {
        while (!c_.empty() && ring_traits<R>::is_zero(c_.back())) c_.pop_back();
    }

    static std::vector<R> mul_schoolbook(const std::vector<R>& a, const std::vector<R>& b) {
        std::vector<R> c(a.size() + b.size() - 1, ring_traits<R>::zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = c[i + j] + a[i] * b[j];
        return c;
    }

    static std::vector<R> mul_rec(const std::vector<R>& a, const std::vector<R>& b) {
        if (std::min(a.size(), b.size()) < karatsuba_threshold())
            return mul_schoolbook(a, b);
        // Karatsuba split at h: a = a0 + x^h a1, b = b0 + x^h b1.
        std::size_t h = std::max(a.size(), b.size()) / 2;
        auto lo = [h](const std::vector<R>& v) {
            return std::vector<R>(v.begin(), v.begin() + std::min(h, v.size()));
        };
        auto hi = [h](const std::vector<R>& v) {
            return v.size() > h ? std::vector<R>(v.begin() + h, v.end()) : std::vector<R>();
        };
        auto add = [](std::vector<R> x, const std::vector<R>& y) {
            if (x.size() < y.size()) x.resize(y.size(), ring_traits<R>::zero());
            for (std::size_t i = 0; i < y.size(); ++i) x[i] = x[i] + y[i];
            return x;
        };
        std::vector<R> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
        std::vector<R> z0 = a0.empty() || b0.empty() ? std::vector<R>() : mul_rec(a0, b0);
        std::vector<R> z2 = a1.empty() || b1.empty() ? std::vector<R>() : mul_rec(a1, b1);
        std::vector<R> sa = add(a0, a1), sb = add(b0, b1);
        std::vector<R> z1 = sa.empty() || sb.empty() ? std::vector<R>() : mul_rec(sa, sb);
        // z1 -= z0 + z2
        z1.resize(std::max({z1.size(), z0.size(), z2.size()}), ring_traits<R>::zero());
        for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = z1[i] - z0[i];
        for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = z1[i] - z2[i];
        std::vector<R> c(a.size() + b.size() - 1, ring_traits<R>::zero());
        for (std::size_t i = 0; i < z0.size() && i < c.size(); ++i) c[i] = c[i] + z0[i];
        for (std::size_t i = 0; i < z1.size() && i + h < c.size(); ++i) c[i + h] = c[i + h] + z1[i];
        for (std::size_t i = 0; i < z2.size() && i + 2 * h < c.size(); ++i)
            c[i + 2 * h] = c[i + 2 * h] + z2[i];
        return c;
    }

    std::vector<R> c_;
};

template <class R>
struct ring_traits<DensePoly<R>> {
    static DensePoly<R> zero() { return DensePoly<R>(); }
    static DensePoly<R> one() { return DensePoly<R>::one(); }
    static bool is_zero(const DensePoly<R>& p) { return p.is_zero(); }
};

/// Polynomial in t over the rationals; the value ring of orbit computations.
using TPoly = DensePoly<BigRat>;

/// Polynomial in z whose coefficients are polynomials in t.
/// For normal-form families the leading z-coefficient is the constant 1 and
/// the z^{d-1} coefficient is the zero polynomial.
using BiPoly = DensePoly<TPoly>;

/// Substitutes z := p(t) into g, producing a polynomial in t.
/// This is the orbit recursion kernel.
inline TPoly bipoly_orbit_step(const BiPoly& g, const TPoly& p) { return g.eval(p); }

/// Degree in t; deg_neg_inf for the zero polynomial.
inline std::int64_t deg_t(const TPoly& p) { return p.degree(); }

inline BiPoly bipoly_from_zpoly(const DensePoly<BigRat>& p) {
    return p.map_coeffs([](const BigRat& q) { return TPoly(q); });
}

/// Rational specialization t := t0 of every coefficient, giving a z-polynomial.
inline DensePoly<BigRat> bipoly_at(const BiPoly& g, const BigRat& t0) {
    return g.map_coeffs([&](const TPoly& c) { return c.eval(t0); });
}

inline DensePoly<CNum> to_complex(const DensePoly<BigRat>& p) {
    return p.map_coeffs([](const BigRat& q) {
        return CNum(static_cast<double>(q), 0.0);
    });
}

}  // namespace preplab
