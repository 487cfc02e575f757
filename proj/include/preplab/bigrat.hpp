#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace preplab {

/// Exact rational scalar.  Kept canonical (gcd(num,den)=1, den>=1) by the
/// underlying representation.  GMP-backed: orbit coefficients reach hundreds
/// of digits, where the asymptotically fast integer kernels matter.
using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

inline BigInt rat_num(const BigRat& q) { return numerator(q); }
inline BigInt rat_den(const BigRat& q) { return denominator(q); }

inline BigRat rat_abs(const BigRat& q) { return q < 0 ? BigRat(-q) : q; }

/// n/d in canonical form (the raw two-argument constructor neither reduces
/// nor accepts negative denominators).
inline BigRat make_rat(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return BigRat(n) / BigRat(d);
}

/// Largest r with r^k <= n, for n >= 0, k >= 1.
inline BigInt int_kth_root_floor(const BigInt& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("int_kth_root_floor: negative radicand");
    if (k == 0) throw std::invalid_argument("int_kth_root_floor: k = 0");
    if (n <= 1 || k == 1) return n;
    BigInt lo = 0, hi = n;
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

/// Exact k-th root of an integer, if one exists.
inline std::optional<BigInt> int_kth_root_exact(const BigInt& n, unsigned k) {
    if (n < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = int_kth_root_exact(-n, k);
        if (!r) return std::nullopt;
        return -*r;
    }
    BigInt r = int_kth_root_floor(n, k);
    if (boost::multiprecision::pow(r, k) == n) return r;
    return std::nullopt;
}

/// Exact k-th root of a rational, if one exists in the rationals.
inline std::optional<BigRat> rat_kth_root_exact(const BigRat& q, unsigned k) {
    auto rn = int_kth_root_exact(rat_num(q), k);
    if (!rn) return std::nullopt;
    auto rd = int_kth_root_exact(rat_den(q), k);
    if (!rd) return std::nullopt;
    return make_rat(*rn, *rd);
}

inline double rat_to_double(const BigRat& q) { return q.convert_to<double>(); }

inline std::string rat_to_string(const BigRat& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

/// Parses "p", "-p" or "p/q".
inline BigRat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return make_rat(num, den);
}

}  // namespace preplab
