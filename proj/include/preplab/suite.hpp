#pragma once

#include "preplab/family.hpp"
#include "preplab/lines.hpp"
#include "preplab/poly.hpp"
#include "preplab/prepfind.hpp"
#include "preplab/roots.hpp"
#include "preplab/structure.hpp"
#include "preplab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace preplab {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double elapsed_s = 0;
    std::vector<std::string> messages;

    void record(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            ++failures;
            if (messages.size() < 8) messages.push_back(what);
        }
    }
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::vector<std::string> filter;  // empty: run everything
    bool inject_fault = false;
    int line_cases = 500;
    int degree_cases = 200;
    int obstruction_cases = 500;
    int root_cases = 100;
};

namespace gen {

inline BigRat small_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    return make_rat(num(rng), den(rng));
}

struct LineInstance {
    int d = 4;
    int m = 3;
    StartingPoints c;   // m+1 distinct points, sum of first m-1 nonzero
    SigmaMap sigma;
};

/// Instance with the given (d, m); points and sigma are random.
inline LineInstance random_instance_dm(std::mt19937_64& rng, int d, int m) {
    LineInstance inst;
    inst.d = d;
    inst.m = m;
    for (;;) {
        std::vector<BigRat> pts;
        while (static_cast<int>(pts.size()) < inst.m + 1) {
            BigRat x = small_rat(rng);
            if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
        }
        BigRat sum = 0;
        for (int i = 0; i < inst.m - 1; ++i) sum += pts[i];
        if (sum == 0) continue;
        inst.c = StartingPoints(std::move(pts));
        break;
    }
    std::uniform_int_distribution<int> ds(1, inst.m - 1);
    inst.sigma.image.clear();
    for (int i = 1; i < inst.m; ++i) inst.sigma.image.push_back(ds(rng));
    return inst;
}

/// Random instance with 2 <= m < d <= d_max (m >= m_min).
inline LineInstance random_instance(std::mt19937_64& rng, int d_max = 5, int m_min = 2) {
    std::uniform_int_distribution<int> dd(std::max(3, m_min + 1), d_max);
    int d = dd(rng);
    std::uniform_int_distribution<int> dm(m_min, d - 1);
    return random_instance_dm(rng, d, dm(rng));
}

}  // namespace gen

namespace suites {

inline SuiteResult lines(const SuiteConfig& cfg) {
    SuiteResult res{"lines"};
    std::mt19937_64 rng(cfg.seed ^ 0x11);
    for (int it = 0; it < cfg.line_cases; ++it) {
        auto inst = gen::random_instance(rng);
        auto tag = "lines case " + std::to_string(it);
        auto line = build_line(inst.c, inst.sigma, inst.d);
        auto g = specialize_line(Family(inst.d, inst.m), line);
        auto [A, B] = decompose_AB(g);
        res.record(A == vanishing_poly(inst.c, inst.m), tag + ": A != vanishing polynomial");
        res.record(B == lagrange_B(inst.c, inst.sigma, inst.d), tag + ": B != Lagrange form");
        bool fixed = true;
        for (int i = 1; i < inst.m; ++i)
            if (bipoly_orbit_step(g, TPoly(inst.c.at(i))) != TPoly(inst.c.at(inst.sigma(i))))
                fixed = false;
        res.record(fixed, tag + ": g_t(c_i) != c_sigma(i)");
        res.record(line.alpha.front() == -inst.c.line_point_sum(inst.m),
                   tag + ": alpha_2 != -sum c_i");
    }
    return res;
}

inline SuiteResult degree_law(const SuiteConfig& cfg) {
    SuiteResult res{"degree-law"};
    std::mt19937_64 rng(cfg.seed ^ 0x22);
    for (int it = 0; it < cfg.degree_cases; ++it) {
        auto inst = gen::random_instance(rng);
        auto tag = "degree-law case " + std::to_string(it);
        auto g = specialize_line(Family(inst.d, inst.m), build_line(inst.c, inst.sigma, inst.d));
        auto A = vanishing_poly(inst.c, inst.m);
        BigRat probe = gen::small_rat(rng);
        while (A.eval(probe) == 0) probe = gen::small_rat(rng);
        auto rep = check_degree_law(g, A, probe, 4);
        res.record(rep.pass, tag + ": deg_t(g^n(c)) != d^{n-1}");
        // Leading-coefficient law
        auto rec = orbit(g, probe, 4);
        bool leads = rec.values[1].leading() == A.eval(probe);
        for (int n = 2; n <= 4; ++n) {
            BigRat prev = rec.values[n - 1].leading(), want = 1;
            for (int i = 0; i < inst.d; ++i) want *= prev;
            if (rec.values[n].leading() != want) leads = false;
        }
        res.record(leads, tag + ": leading coefficient law fails");
    }
    return res;
}

inline SuiteResult expansion(const SuiteConfig& cfg) {
    SuiteResult res{"expansion"};
    std::mt19937_64 rng(cfg.seed ^ 0x33);
    for (int d = 4; d <= 5; ++d) {
        for (int m = 3; m < d; ++m) {
            for (int rep = 0; rep < 10; ++rep) {
                auto inst = gen::random_instance_dm(rng, d, m);
                for (const BigRat& probe : {BigRat(0), inst.c.at(1), gen::small_rat(rng)}) {
                    for (int n : {2, 3}) {
                        auto tag = "expansion d=" + std::to_string(d) + " m=" + std::to_string(m) +
                                   " n=" + std::to_string(n);
                        res.record(check_expansion_bound(inst.c, inst.sigma, d, probe, n).pass,
                                   tag + ": dominant-term bound fails");
                        res.record(check_refined_expansion(inst.c, inst.sigma, d, probe, n).pass,
                                   tag + ": refined bound fails");
                    }
                }
            }
        }
    }
    return res;
}

inline SuiteResult obstruction(const SuiteConfig& cfg) {
    SuiteResult res{"obstruction"};
    std::mt19937_64 rng(cfg.seed ^ 0x44);
    {
        auto rep = sigma_difference(StartingPoints{1, 2, 3, 4}, 4);
        res.record(rep.matches && rep.value == 1, "fixed instance (1,2,3,4), d=4: D != 1");
    }
    for (int it = 0; it < cfg.obstruction_cases; ++it) {
        auto inst = gen::random_instance(rng, 5, 3);
        auto tag = "obstruction case " + std::to_string(it);
        auto rep = sigma_difference(inst.c, inst.d);
        res.record(rep.matches, tag + ": D != closed form");
        res.record(rep.value != 0, tag + ": D vanishes off the c_{m+1} = c_m locus");
        // Same points with c_{m+1} := c_m; the closed form must vanish.
        auto merged = inst.c;
        merged.c[inst.m] = merged.c[inst.m - 1];
        auto rep0 = sigma_difference(merged, inst.d);
        res.record(rep0.matches && rep0.value == 0, tag + ": D != 0 at c_{m+1} = c_m");
    }
    return res;
}

inline SuiteResult chebyshev_suite(const SuiteConfig&) {
    SuiteResult res{"chebyshev"};
    for (int d = 1; d <= 16; ++d) {
        // z^d T_d(z + 1/z) = z^{2d} + 1, cleared of denominators:
        // sum_k a_k (z^2+1)^k z^{d-k} where T_d = sum a_k w^k.
        auto T = chebyshev(d);
        DensePoly<BigRat> lhs;
        auto zsq1 = DensePoly<BigRat>({1, 0, 1});
        for (std::size_t k = 0; k < T.coeffs().size(); ++k)
            lhs = lhs + T.coeff(k) * (zsq1.pow(static_cast<unsigned>(k)) *
                                      DensePoly<BigRat>::monomial(1, static_cast<std::size_t>(d) - k));
        auto rhs = DensePoly<BigRat>::monomial(1, static_cast<std::size_t>(2 * d)) +
                   DensePoly<BigRat>::one();
        res.record(lhs == rhs, "defining identity fails for d=" + std::to_string(d));
    }
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            res.record(chebyshev(a).compose(chebyshev(b)) == chebyshev(a * b),
                       "T_a o T_b != T_ab for a=" + std::to_string(a) + " b=" + std::to_string(b));
    return res;
}

inline SuiteResult structure(const SuiteConfig& cfg) {
    SuiteResult res{"structure"};
    std::mt19937_64 rng(cfg.seed ^ 0x55);
    {
        auto comm = linear_commutant(DensePoly<BigRat>::monomial(1, 3), 1);
        bool ok = comm.size() == 2 && comm[0].is_identity() && comm[1] == LinearMap(-1, 0);
        res.record(ok, "linear_commutant(z^3, 1) != {z, -z}");
    }
    for (int it = 0; it < 25; ++it) {
        auto inst = gen::random_instance(rng);
        auto line = build_line(inst.c, inst.sigma, inst.d);
        auto g = specialize_line(Family(inst.d, inst.m), line);
        BigRat t0 = gen::small_rat(rng);
        while (t0 == 0 || line.alpha[0] * t0 + line.beta[0] == 0) t0 = gen::small_rat(rng);
        auto spec = bipoly_at(g, t0);
        auto comm = linear_commutant(spec, 2);
        res.record(comm.size() == 1 && comm[0].is_identity(),
                   "sigma-line specialization has nontrivial linear commutant");
    }
    {
        auto r = compositional_root(DensePoly<BigRat>::monomial(1, 4), 2);
        res.record(r.root && *r.root == DensePoly<BigRat>::monomial(1, 2),
                   "compositional_root(z^4, 2) != z^2");
    }
    {
        auto g = specialize_line(Family(4, 3), build_line(StartingPoints{1, 2}, SigmaMap::identity(2), 4));
        auto r = compositional_root(g, 2, 2);
        res.record(!r.root && !r.witness.empty(),
                   "line BiPoly admits an unexpected compositional square root");
    }
    for (int it = 0; it < 20; ++it) {
        std::uniform_int_distribution<int> ds(2, 3), de(2, 3);
        int s = ds(rng), e = de(rng);
        std::vector<BigRat> hc(static_cast<std::size_t>(s) + 1);
        for (int i = 0; i < s; ++i) hc[static_cast<std::size_t>(i)] = gen::small_rat(rng);
        hc[static_cast<std::size_t>(s)] = 1;
        DensePoly<BigRat> h(hc);
        auto he = h;
        for (int i = 1; i < e; ++i) he = he.compose(h);
        auto r = compositional_root(he, e);
        bool ok = false;
        if (r.root) {
            auto check = *r.root;
            for (int i = 1; i < e; ++i) check = check.compose(*r.root);
            ok = check == he;
        }
        res.record(ok, "compositional_root failed to recover a root of h^e");
    }
    return res;
}

inline SuiteResult prep_find(const SuiteConfig&) {
    SuiteResult res{"prep-find"};
    auto g = specialize_line(Family(2, 1), Line{});  // z^2 + t
    auto hits = find_prep_params(g, 0, 3, 1e-10);
    std::vector<double> want{0.0, -1.0, -2.0};
    res.record(hits.size() == want.size(), "expected exactly 3 parameters for N=3");
    for (double w : want) {
        bool found = false;
        for (const auto& h : hits)
            if (std::abs(h.t - CNum(w, 0.0)) < 1e-8) found = true;
        res.record(found, "missing parameter t=" + std::to_string(w));
    }
    for (const auto& h : hits) {
        double re = std::round(h.t.real());
        bool rational_like = std::abs(h.t - CNum(re, 0.0)) < 1e-9;
        res.record(rational_like, "hit not within 1e-9 of an integer");
        if (rational_like) {
            auto p = specialize_point(Family(2, 1), {BigRat(static_cast<long>(re))});
            res.record(is_preperiodic_exact(p, 0).kind == PrepStatus::Kind::Preperiodic,
                       "exact confirmation failed at t=" + std::to_string(re));
        }
    }
    // Monotone containment N=2 into N=3
    for (const auto& h2 : find_prep_params(g, 0, 2, 1e-10)) {
        bool found = false;
        for (const auto& h3 : hits)
            if (std::abs(h2.t - h3.t) < 1e-8) found = true;
        res.record(found, "N=2 hit missing from N=3 result");
    }
    return res;
}

inline SuiteResult root_finder(const SuiteConfig& cfg) {
    SuiteResult res{"roots"};
    std::mt19937_64 rng(cfg.seed ^ 0x66);
    std::uniform_int_distribution<int> dn(1, 64);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < cfg.root_cases; ++it) {
        int n = dn(rng);
        std::vector<CNum> c(static_cast<std::size_t>(n) + 1);
        for (auto& x : c) x = CNum(u(rng), u(rng));
        while (std::abs(c.back()) < 0.2) c.back() = CNum(u(rng), u(rng));
        DensePoly<CNum> p(c);
        auto tag = "roots case " + std::to_string(it);
        try {
            auto rs = roots(p, 1e-10);
            double scale = poly_scale(p);
            bool resid = true;
            for (const CNum& r : rs)
                if (std::abs(p.eval(r)) > 1e-10 * scale) resid = false;
            res.record(resid, tag + ": residual above tolerance");
            auto recon = p.leading() * DensePoly<CNum>::from_roots(rs);
            bool close = recon.degree() == p.degree();
            for (std::size_t i = 0; close && i < p.coeffs().size(); ++i)
                if (std::abs(recon.coeff(i) - p.coeff(i)) > 1e-6 * scale) close = false;
            res.record(close, tag + ": reconstruction off by more than 1e-6 relative");
        } catch (const roots_not_converged& e) {
            res.record(false, tag + ": " + e.what());
            res.record(false, tag + ": reconstruction skipped");
        }
    }
    return res;
}

inline SuiteResult escape(const SuiteConfig&) {
    SuiteResult res{"escape-grid"};
    EscapeGridSpec spec;
    spec.re_min = -2.0;
    spec.re_max = -2.0 + 255.0 / 64.0;
    spec.im_min = -2.0;
    spec.im_max = -2.0 + 255.0 / 64.0;
    spec.width = spec.height = 256;
    spec.n_max = 50;
    spec.radius = 4.0;
    Family fam(2, 1);
    auto grid = escape_grid(fam, Line{}, CNum(0, 0), spec);
    const int j0 = 128;  // im = 0 row
    auto cell = [&](double t) { return grid.cells[static_cast<std::size_t>(j0) * 256 +
                                                   static_cast<std::size_t>((t + 2.0) * 64.0 + 0.5)]; };
    res.record(cell(0.0) == spec.n_max + 1, "t=0 escaped");
    res.record(cell(-1.0) == spec.n_max + 1, "t=-1 escaped");
    res.record(cell(-2.0) == spec.n_max + 1, "t=-2 escaped");
    res.record(cell(1.0) >= 1 && cell(1.0) <= 5, "t=1 did not escape by step 5");
    auto again = escape_grid(fam, Line{}, CNum(0, 0), spec);
    res.record(grid.cells == again.cells, "grid not deterministic across runs");
    return res;
}

}  // namespace suites

inline std::vector<SuiteResult> run_suite(const SuiteConfig& cfg) {
    using Runner = SuiteResult (*)(const SuiteConfig&);
    const std::pair<const char*, Runner> all[] = {
        {"lines", suites::lines},
        {"degree-law", suites::degree_law},
        {"expansion", suites::expansion},
        {"obstruction", suites::obstruction},
        {"chebyshev", suites::chebyshev_suite},
        {"structure", suites::structure},
        {"prep-find", suites::prep_find},
        {"roots", suites::root_finder},
        {"escape-grid", suites::escape},
    };
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : all) {
        if (!cfg.filter.empty() &&
            std::find(cfg.filter.begin(), cfg.filter.end(), name) == cfg.filter.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = fn(cfg);
        r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    if (cfg.inject_fault) {
        SuiteResult r{"injected-fault"};
        r.record(false, "fault injected by configuration");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace preplab
