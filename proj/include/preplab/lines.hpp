#pragma once

#include "preplab/bigrat.hpp"
#include "preplab/poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace preplab {

/// sigma : {1,..,m-1} -> {1,..,m-1}, not necessarily injective.
/// image[i-1] = sigma(i), 1-based values.
struct SigmaMap {
    std::vector<int> image;

    static SigmaMap identity(int m_minus_1) {
        SigmaMap s;
        for (int i = 1; i <= m_minus_1; ++i) s.image.push_back(i);
        return s;
    }

    int operator()(int i) const {
        if (i < 1 || i > static_cast<int>(image.size()))
            throw std::invalid_argument("sigma argument out of range");
        int v = image[i - 1];
        if (v < 1 || v > static_cast<int>(image.size()))
            throw std::invalid_argument("sigma image value out of range");
        return v;
    }
};

/// The points c_1,...,c_{m+1}.  The first m-1 define the line; the last two
/// (when present) are the probe points c_m, c_{m+1}.
struct StartingPoints {
    std::vector<BigRat> c;

    StartingPoints() = default;
    StartingPoints(std::initializer_list<BigRat> pts) : c(pts) {}
    explicit StartingPoints(std::vector<BigRat> pts) : c(std::move(pts)) {}

    const BigRat& at(int i) const {  // 1-based
        if (i < 1 || i > static_cast<int>(c.size()))
            throw std::invalid_argument("starting point index out of range");
        return c[i - 1];
    }

    std::vector<BigRat> line_points(int m) const {
        if (static_cast<int>(c.size()) < m - 1)
            throw std::invalid_argument("need at least m-1 starting points");
        return {c.begin(), c.begin() + (m - 1)};
    }

    /// Throws naming the offending pair if c_1..c_{m-1} are not distinct.
    void require_distinct(int m) const {
        auto pts = line_points(m);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j])
                    throw std::invalid_argument(
                        "starting points c_" + std::to_string(i + 1) + " and c_" +
                        std::to_string(j + 1) + " coincide");
    }

    BigRat line_point_sum(int m) const {
        BigRat s = 0;
        for (const BigRat& x : line_points(m)) s += x;
        return s;
    }
};

/// Coefficients of the line t_1 := t, t_i = alpha_i t + beta_i (i = 2..m).
struct Line {
    std::vector<BigRat> alpha;  // alpha_2 .. alpha_m
    std::vector<BigRat> beta;   // beta_2 .. beta_m

    int m() const { return static_cast<int>(alpha.size()) + 1; }
    bool degenerate() const { return alpha.empty() || alpha.front() == 0; }
};

namespace detail {

/// Exact Gaussian elimination; rhs holds several right-hand columns.
/// Returns one solution vector per column.
inline std::vector<std::vector<BigRat>> solve_exact(std::vector<std::vector<BigRat>> mat,
                                                    std::vector<std::vector<BigRat>> rhs) {
    const std::size_t n = mat.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && mat[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("singular linear system");
        std::swap(mat[piv], mat[col]);
        for (auto& r : rhs) std::swap(r[piv], r[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || mat[row][col] == 0) continue;
            BigRat f = mat[row][col] / mat[col][col];
            for (std::size_t k = col; k < n; ++k) mat[row][k] -= f * mat[col][k];
            for (auto& r : rhs) r[row] -= f * r[col];
        }
    }
    std::vector<std::vector<BigRat>> out;
    for (auto& r : rhs) {
        std::vector<BigRat> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / mat[i][i];
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace detail

/// The line L_sigma on which f(c_i) = c_{sigma(i)} holds identically in t,
/// obtained by eliminating t_2..t_m from the Vandermonde system with t_1 := t
/// moved to the right-hand side.
inline Line build_line(const StartingPoints& c, const SigmaMap& sigma, int d) {
    const int m = static_cast<int>(sigma.image.size()) + 1;
    if (d <= m) throw std::invalid_argument("build_line requires d > m");
    c.require_distinct(m);
    auto pts = c.line_points(m);

    // Equation i: sum_{j=2}^m c_i^{m-j} t_j = (c_{sigma(i)} - c_i^d) - t c_i^{m-1}.
    std::vector<std::vector<BigRat>> mat(m - 1, std::vector<BigRat>(m - 1));
    std::vector<BigRat> rhs_beta(m - 1), rhs_alpha(m - 1);
    for (int i = 0; i < m - 1; ++i) {
        BigRat p = 1;
        for (int j = m - 2; j >= 0; --j) {  // column j holds power j of c_i
            mat[i][j] = p;
            p *= pts[i];
        }
        // p is now c_i^{m-1}
        rhs_alpha[i] = -p;
        BigRat cid = pts[i];
        for (int k = 1; k < d; ++k) cid *= pts[i];
        rhs_beta[i] = c.at(sigma(i + 1)) - cid;
    }
    auto sol = detail::solve_exact(std::move(mat), {rhs_alpha, rhs_beta});
    return Line{std::move(sol[0]), std::move(sol[1])};
}

/// A(z) = prod (z - c_i) over the given roots.
inline DensePoly<BigRat> vanishing_poly(const std::vector<BigRat>& roots) {
    return DensePoly<BigRat>::from_roots(roots);
}

inline DensePoly<BigRat> vanishing_poly(const StartingPoints& c, int m) {
    return vanishing_poly(c.line_points(m));
}

/// B_sigma(z) = z^d + sum_i (c_{sigma(i)} - c_i^d) A(z) / ((z - c_i) A'(c_i)).
inline DensePoly<BigRat> lagrange_B(const StartingPoints& c, const SigmaMap& sigma, int d) {
    const int m = static_cast<int>(sigma.image.size()) + 1;
    c.require_distinct(m);
    auto pts = c.line_points(m);
    auto A = vanishing_poly(pts);
    auto Aprime = A.derivative();
    auto B = DensePoly<BigRat>::monomial(1, d);
    for (int i = 0; i < m - 1; ++i) {
        BigRat cid = 1;
        for (int k = 0; k < d; ++k) cid *= pts[i];
        BigRat w = (c.at(sigma(i + 1)) - cid) / Aprime.eval(pts[i]);
        auto basis = divide_exact(A, DensePoly<BigRat>({-pts[i], 1}));
        B = B + w * basis;
    }
    return B;
}

/// Splits g = A(z) t + B(z); every z-coefficient must be affine in t.
inline std::pair<DensePoly<BigRat>, DensePoly<BigRat>> decompose_AB(const BiPoly& g) {
    std::vector<BigRat> a, b;
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
        const TPoly& cj = g.coeff(j);
        if (deg_t(cj) > 1)
            throw std::invalid_argument("coefficient of z^" + std::to_string(j) +
                                        " is not affine in t");
        a.push_back(cj.coeff(1));
        b.push_back(cj.coeff(0));
    }
    return {DensePoly<BigRat>(std::move(a)), DensePoly<BigRat>(std::move(b))};
}

}  // namespace preplab
