#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "catalan.hpp"
#include "epsilon.hpp"
#include "fock.hpp"
#include "lattice.hpp"
#include "modular.hpp"
#include "necklace.hpp"
#include "partition.hpp"
#include "report.hpp"

namespace genus2 {

struct CriterionReport {
    int number = 0;
    std::string name;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool pass() const
    {
        for (const auto& c : checks)
            if (c.gating && !c.pass) return false;
        return true;
    }
};

namespace detail {

inline CheckResult make_check(std::string name, double residual, double tol, json point = json::object(),
                              std::string gamma = "")
{
    CheckResult c;
    c.check = std::move(name);
    c.gamma = std::move(gamma);
    c.point = std::move(point);
    c.residual = residual;
    c.tolerance = tol;
    c.pass = residual <= tol;
    return c;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

inline IntMat gram(std::initializer_list<std::initializer_list<int>> rows)
{
    IntMat g(rows.size(), rows.size());
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (int x : r) g(i, j++) = x;
        ++i;
    }
    return g;
}

inline IntVec ivec(std::initializer_list<int> xs)
{
    IntVec v(xs.size());
    int i = 0;
    for (int x : xs) v(i++) = x;
    return v;
}

} // namespace detail

inline const SewingPoint standard_point{cplx(0, 1.2), cplx(0.7, 0.4), cplx(0.01, 0)};

// Determinant rho-series against the Fock-space sum over partitions through rho^4.
inline CriterionReport criterion_oracle()
{
    CriterionReport r{1, "oracle equivalence"};
    auto t0 = std::chrono::steady_clock::now();
    cplx tau = standard_point.tau, w = standard_point.w;
    Torus t(tau, 20);
    auto oracle = z2_series_oracle(t, w, 4);
    auto det = z2_rho_series(tau, w, 4, 12);
    double worst = 0;
    for (int n = 0; n <= 4; ++n) worst = std::max(worst, rel_err(det[n], oracle[n]));
    json pt = {{"tau", to_json(tau)}, {"w", to_json(w)}, {"K", 12}, {"q_order", 20}, {"orders", 4}};
    r.seconds = detail::seconds_since(t0);
    r.checks.push_back(detail::make_check("rho_series_vs_fock_oracle", worst, 1e-9, pt));
    r.checks.push_back(detail::make_check("oracle_runtime_seconds", r.seconds, 10.0));
    return r;
}

// Catalan relation, power formula and the sphere self-sewing trace identity, exactly.
inline CriterionReport criterion_exact(int N = 10)
{
    CriterionReport r{2, "exact identities"};
    auto t0 = std::chrono::steady_clock::now();
    auto nonzero = [&](const QSeries& s) {
        int bad = 0;
        for (int n = 0; n <= N; ++n) bad += s[n] != 0;
        return bad;
    };
    json pt = {{"order", N}};
    r.checks.push_back(detail::make_check("catalan_quadratic_relation", nonzero(catalan_defect(N)), 0, pt));

    QSeries f = catalan_series(N), fm = QSeries::constant(1, N + 1);
    int bad = 0;
    for (int m = 1; m <= N; ++m) {
        fm = (fm * f).truncate(N + 1);
        bad += nonzero(fm - catalan_power_closed_form(m, N));
    }
    r.checks.push_back(detail::make_check("catalan_power_formula", bad, 0, pt));

    bad = 0;
    for (int c : {1, 2, 24}) bad += nonzero(trace_identity(heisenberg_dimensions(c, N), N).difference);
    r.checks.push_back(detail::make_check("quasi_primary_trace_identity", bad, 0, pt));
    r.seconds = detail::seconds_since(t0);
    r.checks.push_back(detail::make_check("exact_runtime_seconds", r.seconds, 1.0));
    return r;
}

// A-cycle normalisation, symmetry of omega^(2) and Omega in H_2 on a grid.
inline CriterionReport criterion_geometry()
{
    CriterionReport r{3, "geometry normalisation"};
    auto t0 = std::chrono::steady_clock::now();
    SewingSystem s(standard_point, 12);
    json pt = to_json(standard_point);
    auto nu1 = [&](cplx x) { return s.nu1(x); };
    auto nu2 = [&](cplx x) { return s.nu2(x); };
    r.checks.push_back(detail::make_check("a1_period_nu1", std::abs(integrate_a1(s, nu1) - two_pi_i), 1e-6, pt));
    r.checks.push_back(detail::make_check("a2_period_nu2", std::abs(integrate_a2(s, nu2) - two_pi_i), 1e-6, pt));
    r.checks.push_back(detail::make_check("a2_period_nu1", std::abs(integrate_a2(s, nu1)), 1e-6, pt));

    double sym = 0;
    for (auto [x, y] : {std::pair{cplx(-1.3, 0.8), cplx(2.1, -2.0)}, std::pair{cplx(0.3, 1.9), cplx(-0.9, 0.6)}})
        sym = std::max(sym, rel_err(s.omega2(x, y), s.omega2(y, x)));
    r.checks.push_back(detail::make_check("omega2_symmetry", sym, 1e-9, pt));

    // 5 x 5 x 5 grid over Re w, Im w and rho
    int outside = 0, points = 0;
    for (double re : {0.4, 0.9, 1.4, 1.9, 2.4})
        for (double im : {-1.6, -0.8, 0.0, 0.8, 1.6})
            for (cplx rho : {cplx(0.02, 0), cplx(0, 0.015), cplx(-0.01, 0.01), cplx(-0.02, 0), cplx(0.001, -0.005)}) {
                SewingPoint p{standard_point.tau, cplx(re, im), rho};
                ++points;
                try {
                    if (!in_siegel_half_space(period_matrix(p, 12).omega)) ++outside;
                } catch (const domain_error&) {
                    ++outside;
                }
            }
    CheckResult grid = detail::make_check("omega_in_H2_on_grid", outside, 0, {{"tau", to_json(standard_point.tau)}});
    grid.detail = std::to_string(points - outside) + "/" + std::to_string(points) + " points in H2";
    r.checks.push_back(grid);
    r.seconds = detail::seconds_since(t0);
    return r;
}

// Necklace and cycle expansions at length 8 against the matrix formulas.
inline CriterionReport criterion_duality()
{
    CriterionReport r{4, "graph/matrix duality"};
    auto t0 = std::chrono::steady_clock::now();
    NecklaceConfig cfg;
    SewingSystem s(standard_point, cfg.max_label);
    int L = cfg.max_necklace_len, K = cfg.max_label;
    json pt = to_json(standard_point);
    pt["necklace_len"] = L;
    pt["max_label"] = K;
    // the tail bounds can fall below double precision; allow roundoff on top
    auto allowance = [](double tail, cplx v) { return tail + 1e-14 * (1 + std::abs(v)); };

    Mat2 g = omega_from_graphs(s, cfg), m = s.omega();
    RowVec e1 = unit_label_one(s.dim());
    double tail = (necklace_tail_bound(s, e1, e1, L, K) * std::abs(s.point().rho) +
                   necklace_tail_bound(s, s.d(), e1, L, K) * std::abs(s.sqrt_rho()) +
                   necklace_tail_bound(s, s.d(), s.dbar(), L, K)) /
                  (2 * pi);
    CheckResult c = detail::make_check("omega_necklaces", (g - m).cwiseAbs().maxCoeff(),
                                       allowance(tail, m.cwiseAbs().maxCoeff()), pt);
    c.detail = "tail bound " + detail::sci(tail);
    r.checks.push_back(c);

    cplx x{0.3, 1.9}, y{-0.9, 0.6};
    cplx om = s.omega2(x, y);
    double t2 = necklace_tail_bound(s, s.a_form(x), s.a_form_bar(y), L, K);
    c = detail::make_check("omega2_necklaces", std::abs(omega2_from_graphs(s, x, y, cfg) - om), allowance(t2, om), pt);
    c.detail = "tail bound " + detail::sci(t2);
    r.checks.push_back(c);

    CycleProduct cp = rotationless_cycle_product(s, cfg);
    cplx det_form = std::exp(-0.5 * s.log_det());
    c = detail::make_check("z2_cycle_product", std::abs(cp.value - det_form), allowance(cp.tail_bound, det_form), pt);
    c.detail = "tail bound " + detail::sci(cp.tail_bound);
    r.checks.push_back(c);
    r.checks.push_back(detail::make_check("reported_tail_bounds", std::max({tail, t2, cp.tail_bound}), 1e-6, pt));
    r.seconds = detail::seconds_since(t0);
    return r;
}

// Two-tori degeneration at fixed chi by w-halving.
inline CriterionReport criterion_degeneration(cplx w0 = cplx(0.2, 0.1), int halvings = 2)
{
    CriterionReport r{5, "degeneration"};
    auto t0 = std::chrono::steady_clock::now();
    cplx tau = standard_point.tau;
    double chi = 0.1;
    DegenerationResult d = degeneration_limit_check(tau, chi, w0, halvings, 40);
    json pt = {{"tau", to_json(tau)}, {"chi", chi}, {"w0", to_json(w0)}, {"halvings", halvings}, {"K", 40}};
    r.checks.push_back(detail::make_check("omega11_quadratic_ratio", std::abs(d.ratio_omega11 - 4.0), 0.5, pt));
    r.checks.push_back(detail::make_check("omega22_quadratic_ratio", std::abs(d.ratio_omega22 - 4.0), 0.5, pt));
    r.checks.push_back(detail::make_check("z2_quadratic_ratio", std::abs(d.ratio_z2 - 4.0), 0.5, pt));
    // 2 pi i Omega_12 -> w, so this entry vanishes linearly
    r.checks.push_back(detail::make_check("omega12_linear_ratio", std::abs(d.ratio_omega12 - 2.0), 0.25, pt));
    for (auto& c : r.checks) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "ratios %.3f %.3f %.3f %.3f", d.ratio_omega11, d.ratio_omega22, d.ratio_z2,
                      d.ratio_omega12);
        c.detail = buf;
    }
    r.seconds = detail::seconds_since(t0);
    return r;
}

// Gamma_1 equivariance of Z and Omega, eta character and the kappa determinant identity.
inline CriterionReport criterion_modular()
{
    CriterionReport r{6, "modular equivariance"};
    auto t0 = std::chrono::steady_clock::now();
    SewingPoint p{cplx(0, 1.2), cplx(0.55, 0.3), cplx(0.005, 0)};
    json pt = to_json(p);
    pt["K"] = 12;
    Gamma1 T = Gamma1::T(), S = Gamma1::S();

    r.checks.push_back(detail::make_check("eta_character_T", std::abs(eta_character(T).value - std::exp(-I * pi / 6.0)),
                                          1e-12, json::object(), T.str()));
    EquivarianceResult eT = z2_equivariance(T, p, 12);
    r.checks.push_back(detail::make_check("z2_equivariance_T", eT.residual / std::abs(eT.rhs), 1e-12, pt, T.str()));
    EquivarianceResult eS = z2_equivariance(S, p, 12);
    r.checks.push_back(detail::make_check("z2_equivariance_S", eS.residual, 1e-5, pt, S.str()));
    r.checks.push_back(detail::make_check("omega_equivariance_T", omega_equivariance(T, p, 12).residual, 1e-5, pt, T.str()));
    r.checks.push_back(detail::make_check("omega_equivariance_S", omega_equivariance(S, p, 12).residual, 1e-5, pt, S.str()));
    KappaIdentity k = kappa_identity(S, p, 12);
    r.checks.push_back(
        detail::make_check("kappa_det_product", std::abs(k.det_transformed - k.det_product), 1e-8, pt, S.str()));
    r.checks.push_back(
        detail::make_check("kappa_det_omega11", std::abs(k.det_kappa - k.det_kappa_omega), 1e-8, pt, S.str()));
    r.seconds = detail::seconds_since(t0);
    return r;
}

// Rank 1 and 2 lattice factorisation at low rho orders and the Ward identity.
inline CriterionReport criterion_lattice()
{
    CriterionReport r{7, "lattice factorisation"};
    auto t0 = std::chrono::steady_clock::now();
    cplx tau = standard_point.tau, w = standard_point.w;
    Torus t(tau);
    using detail::ivec;
    struct Case {
        EvenLattice L;
        std::vector<std::pair<IntVec, IntVec>> pairs;
    };
    std::vector<Case> cases{
        {EvenLattice(detail::gram({{2}}), "A1"), {{ivec({0}), ivec({1})}, {ivec({1}), ivec({0})}, {ivec({1}), ivec({-1})}, {ivec({2}), ivec({1})}}},
        {EvenLattice(detail::gram({{2, 0}, {0, 2}}), "2I2"),
         {{ivec({0, 0}), ivec({1, 0})}, {ivec({1, 0}), ivec({0, 1})}, {ivec({1, -1}), ivec({1, 1})}, {ivec({0, 1}), ivec({1, 1})}}}};
    SewingSystem s(standard_point, 12);
    cplx x{0.3, 1.9};
    for (const auto& c : cases) {
        double lead = 0, next = 0;
        for (const auto& [a, b] : c.pairs) {
            auto neck = z_alpha_beta_rho_series(tau, w, c.L, a, b, 1, true);
            auto omega = z_alpha_beta_rho_series(tau, w, c.L, a, b, 1, false);
            cplx want = z_alpha_beta_leading(t, w, c.L, a, b);
            lead = std::max({lead, rel_err(neck[0], want), rel_err(omega[0], want)});
            next = std::max(next, rel_err(neck[1], omega[1]));
        }
        json pt = {{"tau", to_json(tau)}, {"w", to_json(w)}, {"lattice", c.L.name()}};
        r.checks.push_back(detail::make_check("leading_order_" + c.L.name(), lead, 1e-8, pt));
        r.checks.push_back(detail::make_check("next_order_" + c.L.name(), next, 1e-8, pt));
        WardResult ward = ward_identity_check(s, c.L, x, 12);
        json wp = to_json(standard_point);
        wp["lattice"] = c.L.name();
        wp["cutoff"] = 12;
        r.checks.push_back(detail::make_check("ward_identity_" + c.L.name(), ward.residual, 1e-7, wp));
    }
    r.seconds = detail::seconds_since(t0);
    return r;
}

// eps- against rho-formalism near the two-tori degeneration.
inline CriterionReport criterion_compare(cplx w0 = cplx(0.4, 0), int halvings = 3)
{
    CriterionReport r{8, "incompatibility"};
    auto t0 = std::chrono::steady_clock::now();
    cplx tau = standard_point.tau;
    auto scaling = [&](double chi, bool gating) {
        RatioReport rep = ratio_comparison(tau, w0, chi, halvings, 40);
        double worst = 0;
        std::string ratios;
        for (double x : rep.ratios) {
            worst = std::max(worst, std::abs(x - 64.0));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.2f", ratios.empty() ? "" : " ", x);
            ratios += buf;
        }
        json pt = {{"tau", to_json(tau)}, {"chi", chi}, {"w0", to_json(w0)}, {"halvings", halvings}, {"K", 40}};
        char name[64];
        std::snprintf(name, sizeof name, "w6_scaling_chi_%g", chi);
        CheckResult c = detail::make_check(name, worst, 10.0, pt);
        c.gating = gating;
        c.detail = "halving ratios " + ratios;
        return c;
    };
    r.checks.push_back(scaling(1e-3, true));
    // with chi small enough that chi w^4 terms are negligible
    r.checks.push_back(scaling(1e-6, false));

    double chi = 0.1;
    RatioRow row = ratio_at(tau, 0.05, chi, 40);
    double gap = std::abs(row.T - 1.0);
    // passes when the gap exceeds the tolerance
    CheckResult c = detail::make_check("T_differs_from_one", gap, 1e-3, {{"tau", to_json(tau)}, {"chi", chi}, {"w", 0.05}});
    c.pass = gap > 1e-3;
    c.detail = "|T - 1| must exceed the tolerance";
    r.checks.push_back(c);

    // Gamma_1 invariance of T: the T-action is exact, S is informational only
    cplx wi{0.2, 0.05}, taui{0.1, 1.2};
    double chii = 1e-3;
    RatioRow base = ratio_at(taui, wi, chii, 40);
    CheckResult ct = detail::make_check("T_ratio_invariance", std::abs(ratio_at(taui + 1.0, wi, chii, 40).T - base.T), 1e-12,
                                        {{"tau", to_json(taui)}, {"w", to_json(wi)}, {"chi", chii}}, Gamma1::T().str());
    ct.gating = false;
    r.checks.push_back(ct);
    CheckResult cs = detail::make_check("S_ratio_invariance", std::abs(ratio_at(-1.0 / taui, wi / taui, chii, 40).T - base.T),
                                        1e-8, {{"tau", to_json(taui)}, {"w", to_json(wi)}, {"chi", chii}}, Gamma1::S().str());
    cs.gating = false;
    r.checks.push_back(cs);
    r.seconds = detail::seconds_since(t0);
    return r;
}

inline std::vector<std::function<CriterionReport()>> suite_functions(const std::string& suite)
{
    std::vector<std::pair<std::string, std::function<CriterionReport()>>> all{
        {"oracle", [] { return criterion_oracle(); }},
        {"exact", [] { return criterion_exact(); }},
        {"geometry", [] { return criterion_geometry(); }},
        {"duality", [] { return criterion_duality(); }},
        {"degeneration", [] { return criterion_degeneration(); }},
        {"modular", [] { return criterion_modular(); }},
        {"lattice", [] { return criterion_lattice(); }},
        {"compare", [] { return criterion_compare(); }}};
    std::vector<std::function<CriterionReport()>> out;
    for (auto& [name, f] : all)
        if (suite == "all" || suite == name) out.push_back(f);
    if (out.empty()) throw std::invalid_argument("suite: unknown " + suite);
    return out;
}

inline json to_json(const CriterionReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"criterion", r.number}, {"name", r.name}, {"pass", r.pass()}, {"seconds", r.seconds}, {"checks", checks}};
}

} // namespace genus2
