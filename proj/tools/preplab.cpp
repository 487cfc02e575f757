// preplab: exact and numeric computations with one-parameter polynomial
// families in normal form.  One binary, six subcommands.

#include <CLI11.hpp>

#include <preplab/family.hpp>
#include <preplab/lines.hpp>
#include <preplab/prepfind.hpp>
#include <preplab/serialize.hpp>
#include <preplab/structure.hpp>
#include <preplab/suite.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace preplab;

constexpr const char* schema_tag = "preplab/1";

std::vector<BigRat> parse_rat_list(const std::string& s) {
    std::vector<BigRat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

/// "d=2,m=1" -> Family
Family parse_family(const std::string& s) {
    int d = 0, m = 0;
    if (std::sscanf(s.c_str(), "d=%d,m=%d", &d, &m) != 2)
        throw CLI::ValidationError("--family", "expected the form d=<int>,m=<int>");
    return Family(d, m);
}

Line parse_line(const std::string& alpha, const std::string& beta) {
    Line line;
    if (!alpha.empty()) line.alpha = parse_rat_list(alpha);
    if (!beta.empty()) line.beta = parse_rat_list(beta);
    if (line.alpha.size() != line.beta.size())
        throw CLI::ValidationError("--alpha/--beta", "lists must have equal length");
    return line;
}

json poly_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("file", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct Output {
    bool csv = false;
    void emit(const json& j, const std::vector<std::string>& csv_lines) const {
        if (csv)
            for (const auto& l : csv_lines) std::cout << l << "\n";
        else
            std::cout << j.dump(2) << "\n";
    }
};

int cmd_line_build(const std::string& c_arg, const std::string& sigma_arg, int d,
                   const Output& out) {
    StartingPoints c(parse_rat_list(c_arg));
    SigmaMap sigma{parse_int_list(sigma_arg)};
    int m = static_cast<int>(c.c.size()) + 1;
    if (static_cast<int>(sigma.image.size()) != m - 1)
        throw CLI::ValidationError("--sigma", "needs one image value per point in --c");
    Line line = build_line(c, sigma, d);
    auto [A, B] = decompose_AB(specialize_line(Family(d, m), line));
    json j{{"schema", schema_tag},
           {"alpha", json::array()},
           {"beta", json::array()},
           {"A", poly_to_string(A, "z")},
           {"B", poly_to_string(B, "z")}};
    std::vector<std::string> csv{"i,alpha,beta"};
    for (std::size_t i = 0; i < line.alpha.size(); ++i) {
        j["alpha"].push_back(rat_to_string(line.alpha[i]));
        j["beta"].push_back(rat_to_string(line.beta[i]));
        csv.push_back(std::to_string(i + 2) + "," + rat_to_string(line.alpha[i]) + "," +
                      rat_to_string(line.beta[i]));
    }
    out.emit(j, csv);
    return 0;
}

int cmd_iterate(const Family& fam, const Line& line, const std::string& start, int n_max,
                std::int64_t deg_cap, const Output& out) {
    BiPoly g = specialize_line(fam, line);
    auto rec = orbit(g, rat_from_string(start), n_max, deg_cap);
    json list = json::array();
    std::vector<std::string> csv{"n,deg_t,poly"};
    for (std::size_t n = 0; n < rec.values.size(); ++n) {
        std::string poly = poly_to_string(rec.values[n], "t");
        std::int64_t deg = rec.degrees[n] == deg_neg_inf ? -1 : rec.degrees[n];
        list.push_back({{"n", n}, {"poly", poly}, {"deg_t", deg}});
        csv.push_back(std::to_string(n) + "," + std::to_string(deg) + ",\"" + poly + "\"");
    }
    out.emit(json{{"schema", schema_tag}, {"orbit", list}}, csv);
    return 0;
}

int cmd_prep_find(const Family& fam, const Line& line, const std::string& start, int N,
                  double tol, std::int64_t deg_cap, const Output& out) {
    BiPoly g = specialize_line(fam, line);
    auto hits = find_prep_params(g, rat_from_string(start), N, tol, default_merge_radius,
                                 deg_cap);
    json list = json::array();
    std::vector<std::string> csv{"re,im,n,k,residual"};
    for (const PrepHit& h : hits) {
        list.push_back({{"re", h.t.real()},
                        {"im", h.t.imag()},
                        {"n", h.n},
                        {"k", h.k},
                        {"residual", h.residual},
                        {"status", "numeric"}});
        std::ostringstream row;
        row << h.t.real() << "," << h.t.imag() << "," << h.n << "," << h.k << ","
            << h.residual;
        csv.push_back(row.str());
    }
    out.emit(json{{"schema", schema_tag}, {"hits", list}}, csv);
    return 0;
}

int cmd_escape_grid(const Family& fam, const Line& line, const std::string& start,
                    const EscapeGridSpec& spec, const std::string& out_path) {
    auto grid = escape_grid(fam, line, CNum(rat_to_double(rat_from_string(start))), spec);
    std::ofstream pgm(out_path, std::ios::binary);
    if (!pgm) throw CLI::ValidationError("--out", "cannot write " + out_path);
    pgm << "P5\n" << spec.width << " " << spec.height << "\n255\n";
    for (int cell : grid.cells) {
        unsigned char byte =
            static_cast<unsigned char>(255L * cell / (spec.n_max + 1));
        pgm.write(reinterpret_cast<const char*>(&byte), 1);
    }
    pgm.close();
    json sidecar{{"schema", schema_tag},
                 {"region",
                  {{"re_min", spec.re_min},
                   {"re_max", spec.re_max},
                   {"im_min", spec.im_min},
                   {"im_max", spec.im_max}}},
                 {"resolution", {{"width", spec.width}, {"height", spec.height}}},
                 {"n_max", spec.n_max},
                 {"radius", spec.radius},
                 {"never_escaped", spec.n_max + 1}};
    std::ofstream side(out_path + ".json");
    side << sidecar.dump(2) << "\n";
    std::cout << json{{"schema", schema_tag}, {"pgm", out_path}, {"sidecar", out_path + ".json"}}
                     .dump(2)
              << "\n";
    return 0;
}

int cmd_structure(const std::string& root_path, int e, const std::string& commutant_path,
                  int n_max, std::int64_t deg_cap, const Output& out) {
    json j{{"schema", schema_tag}};
    if (!root_path.empty()) {
        auto g = poly_from_json(poly_from_file(root_path));
        auto r = compositional_root(g, e, deg_cap);
        j["check_root"] = {{"e", e}, {"found", static_cast<bool>(r.root)}};
        if (r.root)
            j["check_root"]["root"] = poly_to_string(*r.root, "z");
        else
            j["check_root"]["witness"] = r.witness;
    }
    if (!commutant_path.empty()) {
        auto g = poly_from_json(poly_from_file(commutant_path));
        json maps = json::array();
        for (const LinearMap& mu : linear_commutant(g, n_max, deg_cap))
            maps.push_back({{"a", rat_to_string(mu.a)}, {"b", rat_to_string(mu.b)}});
        j["commutant"] = {{"n_max", n_max}, {"maps", maps}};
    }
    out.emit(j, {j.dump()});
    return 0;
}

int cmd_verify_suite(const SuiteConfig& cfg, const Output& out) {
    auto results = run_suite(cfg);
    json list = json::array();
    std::vector<std::string> csv{"suite,cases,failures,elapsed"};
    int failures = 0;
    for (const SuiteResult& r : results) {
        failures += r.failures;
        list.push_back({{"suite", r.name},
                        {"cases", r.cases},
                        {"failures", r.failures},
                        {"elapsed", r.elapsed_s}});
        std::ostringstream row;
        row << r.name << "," << r.cases << "," << r.failures << "," << r.elapsed_s;
        csv.push_back(row.str());
        for (const std::string& msg : r.messages) std::cerr << r.name << ": " << msg << "\n";
    }
    out.emit(json{{"schema", schema_tag}, {"suites", list}}, csv);
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numeric computation with parametrized polynomial families"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::int64_t deg_cap = preplab::default_deg_cap;
    double tol = preplab::default_root_tol;
    Output out;
    app.add_option("--seed", seed, "random seed for suite runs");
    app.add_option("--deg-cap", deg_cap, "degree cap for symbolic orbits");
    app.add_option("--tol", tol, "numeric tolerance");
    auto* json_flag = app.add_flag("--json", "JSON output (default)");
    app.add_flag("--csv", out.csv, "CSV output")->excludes(json_flag);

    // line-build
    auto* lb = app.add_subcommand("line-build", "solve for the preperiodicity line");
    std::string lb_c, lb_sigma;
    int lb_d = 0;
    lb->add_option("--c", lb_c, "comma-separated rational points c_1..c_{m-1}")->required();
    lb->add_option("--sigma", lb_sigma, "comma-separated images sigma(1)..sigma(m-1)")->required();
    lb->add_option("--d", lb_d, "degree of the family")->required();

    // shared family/line options
    std::string family_arg = "d=2,m=1", alpha_arg, beta_arg, start_arg = "0";
    auto add_family_opts = [&](CLI::App* sub) {
        sub->add_option("--family", family_arg, "family as d=<int>,m=<int>");
        sub->add_option("--alpha", alpha_arg, "comma-separated alpha_2..alpha_m");
        sub->add_option("--beta", beta_arg, "comma-separated beta_2..beta_m");
        sub->add_option("--c", start_arg, "starting point");
    };

    // iterate
    auto* it = app.add_subcommand("iterate", "symbolic orbit of the starting point");
    add_family_opts(it);
    int it_n = 3;
    it->add_option("--n", it_n, "number of iterates");

    // prep-find
    auto* pf = app.add_subcommand("prep-find", "numeric preperiodic parameters");
    add_family_opts(pf);
    int pf_N = 3;
    pf->add_option("--N", pf_N, "largest collision index");

    // escape-grid
    auto* eg = app.add_subcommand("escape-grid", "escape-time grid over the parameter");
    add_family_opts(eg);
    preplab::EscapeGridSpec spec{-2.0, 2.0, -2.0, 2.0};
    std::string eg_out = "grid.pgm";
    eg->add_option("--re-min", spec.re_min);
    eg->add_option("--re-max", spec.re_max);
    eg->add_option("--im-min", spec.im_min);
    eg->add_option("--im-max", spec.im_max);
    eg->add_option("--width", spec.width);
    eg->add_option("--height", spec.height);
    eg->add_option("--nmax", spec.n_max);
    eg->add_option("--radius", spec.radius, "0: per-cell coefficient bound");
    eg->add_option("--out", eg_out, "PGM output path")->required();

    // structure
    auto* st = app.add_subcommand("structure", "commutant and compositional-root checks");
    std::string st_root, st_comm;
    int st_e = 2, st_nmax = 2;
    st->add_option("--check-root", st_root, "polynomial JSON file (coefficient array)");
    st->add_option("--e", st_e, "compositional-root exponent");
    st->add_option("--commutant", st_comm, "polynomial JSON file (coefficient array)");
    st->add_option("--nmax", st_nmax, "largest iterate for the commutant");

    // verify-suite
    auto* vs = app.add_subcommand("verify-suite", "run the invariant suites");
    preplab::SuiteConfig cfg;
    vs->add_option("--filter", cfg.filter, "suite names to run (default: all)");
    vs->add_flag("--inject-fault", cfg.inject_fault, "self-test: force a failure");
    vs->add_option("--line-cases", cfg.line_cases);
    vs->add_option("--degree-cases", cfg.degree_cases);
    vs->add_option("--obstruction-cases", cfg.obstruction_cases);
    vs->add_option("--root-cases", cfg.root_cases);

    // let --json/--csv, --tol etc. appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit code 2
    }

    try {
        if (*lb) return cmd_line_build(lb_c, lb_sigma, lb_d, out);
        preplab::Family fam = parse_family(family_arg);
        preplab::Line line = parse_line(alpha_arg, beta_arg);
        if (*it) return cmd_iterate(fam, line, start_arg, it_n, deg_cap, out);
        if (*pf) return cmd_prep_find(fam, line, start_arg, pf_N, tol, deg_cap, out);
        if (*eg) return cmd_escape_grid(fam, line, start_arg, spec, eg_out);
        if (*st) return cmd_structure(st_root, st_e, st_comm, st_nmax, deg_cap, out);
        if (*vs) {
            cfg.seed = seed;
            return cmd_verify_suite(cfg, out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
