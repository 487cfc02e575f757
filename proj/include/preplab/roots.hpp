#pragma once

#include "preplab/poly.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace preplab {

inline constexpr int default_root_iter_cap = 500;
inline constexpr double default_root_tol = 1e-10;

struct roots_not_converged : std::runtime_error {
    roots_not_converged(std::vector<CNum> partial_, std::vector<std::size_t> unconverged_)
        : std::runtime_error("root finder: " + std::to_string(unconverged_.size()) +
                             " roots unconverged after iteration cap"),
          partial(std::move(partial_)),
          unconverged(std::move(unconverged_)) {}
    std::vector<CNum> partial;
    std::vector<std::size_t> unconverged;
};

/// Max coefficient magnitude; the residual scale.
inline double poly_scale(const DensePoly<CNum>& p) {
    double s = 0;
    for (const CNum& c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

/// All complex roots with multiplicity by Aberth-Ehrlich simultaneous
/// iteration.  Exact zero roots are split off first; no deflation otherwise.
/// Every returned root r satisfies |p(r)| <= tol * scale(p).
inline std::vector<CNum> roots(const DensePoly<CNum>& p, double tol = default_root_tol,
                               int iter_cap = default_root_iter_cap) {
    if (p.degree() < 1) throw std::invalid_argument("roots requires degree >= 1");
    const double scale = poly_scale(p);
    if (std::abs(p.leading()) <= tol * scale)
        throw std::invalid_argument("roots: leading coefficient below tolerance");

    std::vector<CNum> out;
    std::vector<CNum> c = p.coeffs();
    while (c.size() > 1 && c.front() == CNum(0.0, 0.0)) {
        out.push_back(CNum(0.0, 0.0));
        c.erase(c.begin());
    }
    const std::size_t n = c.size() - 1;
    if (n == 0) return out;

    DensePoly<CNum> q{std::vector<CNum>(c)};
    DensePoly<CNum> dq = q.derivative();

    // Initial guesses on a perturbed circle inside the Cauchy bound.
    double cauchy = 0;
    for (std::size_t i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[i] / c[n]));
    const double r0 = 1.0 + cauchy;
    std::vector<CNum> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = 0.5 * r0 * CNum(std::cos(theta), std::sin(theta));
    }

    std::vector<bool> done(n, false);
    for (int it = 0; it < iter_cap; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            CNum pv = q.eval(z[i]);
            if (std::abs(pv) <= tol * scale) {
                done[i] = true;
                continue;
            }
            all_done = false;
            CNum dv = dq.eval(z[i]);
            if (dv == CNum(0.0, 0.0)) {
                z[i] += CNum(1e-6 * r0, 1e-6 * r0);
                continue;
            }
            CNum newton = pv / dv;
            CNum sum(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && z[i] != z[j]) sum += CNum(1.0, 0.0) / (z[i] - z[j]);
            CNum denom = CNum(1.0, 0.0) - newton * sum;
            z[i] -= denom == CNum(0.0, 0.0) ? newton : newton / denom;
        }
        if (all_done) break;
    }

    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(q.eval(z[i])) > tol * scale) bad.push_back(i);
    out.insert(out.end(), z.begin(), z.end());
    if (!bad.empty()) throw roots_not_converged(std::move(out), std::move(bad));
    return out;
}

}  // namespace preplab
