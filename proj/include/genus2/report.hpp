#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "series.hpp"
#include "sewing.hpp"

namespace genus2 {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline cplx complex_from_json(const json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline json to_json(const Mat2& m)
{
    json rows = json::array();
    for (int i = 0; i < 2; ++i) rows.push_back({to_json(m(i, 0)), to_json(m(i, 1))});
    return rows;
}

inline json to_json(const std::vector<cplx>& v)
{
    json a = json::array();
    for (cplx z : v) a.push_back(to_json(z));
    return a;
}

inline std::string rational_string(const Rational& r)
{
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

inline json to_json(const Series<Rational>& s, int from, int to)
{
    json a = json::array();
    for (int e = from; e <= to; ++e) a.push_back(rational_string(s[e]));
    return a;
}

inline json to_json(const SewingPoint& p) { return {{"tau", to_json(p.tau)}, {"w", to_json(p.w)}, {"rho", to_json(p.rho)}}; }

inline json to_json(const PeriodMatrix& pm)
{
    return {{"omega", to_json(pm.omega)},
            {"K", pm.K},
            {"spectral_radius", pm.spectral_radius},
            {"tail_bound", pm.tail_bound},
            {"branch_tag", pm.branch_index},
            {"branch", pm.branch_tag},
            {"in_H2", in_siegel_half_space(pm.omega)}};
}

struct CheckResult {
    std::string check;
    std::string gamma; // empty when no modular transformation is involved
    json point = json::object();
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    bool gating = true; // informational checks are reported but never fail a suite
    std::string detail;
};

inline json to_json(const CheckResult& c)
{
    json j = {{"check", c.check},
              {"gamma", c.gamma.empty() ? json(nullptr) : json(c.gamma)},
              {"point", c.point},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"pass", c.pass}};
    if (!c.gating) j["informational"] = true;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

// One console line per check.
inline std::string summary_line(const CheckResult& c)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "residual=%.3e tol=%.1e", c.residual, c.tolerance);
    std::string tag = !c.gating ? "INFO" : c.pass ? "PASS" : "FAIL";
    std::string line = tag + " " + c.check + " " + buf;
    if (!c.gamma.empty()) line += " gamma=" + c.gamma;
    if (!c.detail.empty()) line += " (" + c.detail + ")";
    return line;
}

} // namespace genus2
