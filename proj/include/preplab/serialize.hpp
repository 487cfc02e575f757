#pragma once

#include "preplab/bigrat.hpp"
#include "preplab/poly.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace preplab {

using json = nlohmann::json;

/// Canonical text form "c0 + c1*x + c2*x^2"; rationals printed as "p/q".
inline std::string poly_to_string(const DensePoly<BigRat>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) out += " + ";
        out += rat_to_string(p.coeff(i));
        if (i == 1) out += "*" + var;
        if (i > 1) out += "*" + var + "^" + std::to_string(i);
    }
    return out;
}

inline DensePoly<BigRat> poly_from_string(const std::string& s) {
    if (s == "0") return DensePoly<BigRat>();
    std::vector<BigRat> coeffs;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t plus = s.find(" + ", pos);
        std::string term = s.substr(pos, plus == std::string::npos ? plus : plus - pos);
        pos = plus == std::string::npos ? s.size() : plus + 3;
        std::size_t star = term.find('*');
        coeffs.push_back(rat_from_string(star == std::string::npos ? term : term.substr(0, star)));
    }
    return DensePoly<BigRat>(std::move(coeffs));
}

/// Machine exchange form: JSON array of rational strings, index = degree.
inline json poly_to_json(const DensePoly<BigRat>& p) {
    json arr = json::array();
    for (const BigRat& c : p.coeffs()) arr.push_back(rat_to_string(c));
    return arr;
}

inline DensePoly<BigRat> poly_from_json(const json& arr) {
    std::vector<BigRat> coeffs;
    for (const auto& s : arr) coeffs.push_back(rat_from_string(s.get<std::string>()));
    return DensePoly<BigRat>(std::move(coeffs));
}

inline json bipoly_to_json(const BiPoly& g) {
    json arr = json::array();
    for (const TPoly& c : g.coeffs()) arr.push_back(poly_to_json(c));
    return arr;
}

}  // namespace preplab
