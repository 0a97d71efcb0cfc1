#pragma once

#include <functional>
#include <string>
#include <vector>

#include "catalan.hpp"
#include "fock.hpp"
#include "necklace.hpp"
#include "sewing.hpp"
#include "taylor.hpp"

namespace genus2 {

struct PartitionValue {
    cplx value;
    std::string formula;
    double tail_bound = 0;
    std::string branch_tag;
};

// (eta(tau)^{-1} det(I - R)^{-1/2})^rank, square root continued from rho = 0.
inline PartitionValue heisenberg_Z2(const SewingPoint& p, int K = default_K, int rank = 1, int q_order = 20)
{
    PartitionValue out;
    Torus t(p.tau, q_order);
    cplx inv_eta = 1.0 / t.eta();
    if (p.rho == cplx{}) {
        out.value = std::pow(inv_eta, rank);
        out.formula = "eta^-rank";
        out.branch_tag = "rho=0";
        return out;
    }
    SewingSystem s(p, K, q_order);
    out.value = std::pow(inv_eta, rank) * std::exp(-0.5 * double(rank) * s.log_det());
    out.formula = "(eta^-1 det(I-R)^-1/2)^rank";
    out.branch_tag = "continued-from-rho=0";
    SewingSystem s2(p, K + 2, q_order);
    out.tail_bound = std::abs(out.value) * std::abs(std::exp(-0.5 * double(rank) * (s2.log_det() - s.log_det())) - 1.0);
    return out;
}

// log det(I - R) continued along rho -> t rho, t in [0,1], by phase unwrapping.
inline cplx log_det_along_ray(const SewingPoint& p, int K, int steps = 32, int q_order = 20)
{
    cplx acc = 0, prev = 1.0;
    for (int j = 1; j <= steps; ++j) {
        SewingPoint pj = p;
        pj.rho = p.rho * (double(j) / steps);
        cplx d = SewingSystem(pj, K, q_order).det();
        cplx step = std::log(d / prev);
        if (std::abs(step.imag()) > pi / 4) return log_det_along_ray(p, K, 2 * steps, q_order);
        acc += step;
        prev = d;
    }
    return acc;
}

inline cplx z2_from_cycles(const SewingPoint& p, const NecklaceConfig& cfg, int q_order = 20)
{
    SewingSystem s(p, cfg.max_label, q_order);
    return rotationless_cycle_product(s, cfg).value / s.torus().eta();
}

// Sum over perfect matchings of prod omega2(x_r, x_s), times Z^(2).
inline cplx heisenberg_npoint(const SewingPoint& p, const std::vector<cplx>& xs, int K = default_K)
{
    int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(xs[i] - xs[j]) < 1e-9) throw domain_error("coincident points");
    if (n % 2) return 0.0;
    cplx z = heisenberg_Z2(p, K).value;
    SewingSystem s(p, K);
    return z * sum_over_matchings(n, [&](int i, int j) { return s.omega2(xs[i], xs[j]); });
}

// One-point function of the conformal vector for rank-l Heisenberg: (l/12) s2(x) Z.
inline cplx virasoro_one_point(const SewingPoint& p, cplx x, int K = default_K, int rank = 1)
{
    SewingSystem s(p, K);
    return double(rank) / 12.0 * s.s2(x) * heisenberg_Z2(p, K, rank).value;
}

// Coefficients of rho^0..rho^n of eta * Z^(2) (rank 1) from the determinant formula,
// by a discrete Cauchy integral on |rho| = radius.
inline std::vector<cplx> z2_rho_series(cplx tau, cplx w, int n, int K = default_K, double radius = 0.02,
                                       int points = 64, int q_order = 20)
{
    Torus t(tau, q_order);
    cplx eta = t.eta();
    return taylor_coefficients(
        [&](cplx rho) { return eta * heisenberg_Z2({tau, w, rho}, K, 1, q_order).value; }, radius, points,
        n + 1);
}

// Limit of Z^(2) at fixed chi = -rho/w^2 as w -> 0: f^{c/24} Z1(q) Z1(f) = eta(tau)^-c prod (1-f^n)^-c.
inline cplx degenerate_limit(cplx tau, double f, int rank = 1)
{
    Torus t(tau);
    double prod = 1;
    double fn = 1;
    for (int n = 1; n < 10000; ++n) {
        fn *= f;
        prod *= 1 - fn;
        if (std::abs(fn) < 1e-18) break;
    }
    return std::pow(1.0 / t.eta(), rank) * std::pow(prod, -rank);
}

inline double catalan_value(double chi)
{
    // f = (1 - 2 chi - sqrt(1 - 4 chi)) / (2 chi), rationalised
    return 2 * chi / (1 - 2 * chi + std::sqrt(1 - 4 * chi));
}

struct DegenerationRow {
    double w;
    cplx omega11_residual;
    cplx omega12;
    cplx omega22_residual;
    cplx z2_residual;
};

struct DegenerationResult {
    std::vector<DegenerationRow> rows;
    double ratio_omega11 = 0, ratio_omega22 = 0, ratio_z2 = 0, ratio_omega12 = 0;
};

// Omega(tau, w, -w^2 chi) and Z^(2) for w, w/2, w/4, ...; ratios compare the last two residuals.
inline DegenerationResult degeneration_limit_check(cplx tau, double chi, cplx w0, int halvings, int K = 40)
{
    DegenerationResult out;
    double f = catalan_value(chi);
    cplx lim22 = std::log(f) / two_pi_i;
    cplx limZ = degenerate_limit(tau, f);
    for (int h = 0; h <= halvings; ++h) {
        cplx w = w0 * std::pow(0.5, h);
        SewingPoint p{tau, w, -w * w * chi};
        SewingSystem s(p, K);
        Mat2 o = s.omega();
        DegenerationRow row;
        row.w = std::abs(w);
        row.omega11_residual = o(0, 0) - tau;
        row.omega12 = o(0, 1);
        row.omega22_residual = o(1, 1) - lim22;
        row.z2_residual = heisenberg_Z2(p, K).value - limZ;
        out.rows.push_back(row);
    }
    if (out.rows.size() >= 2) {
        auto& a = out.rows[out.rows.size() - 2];
        auto& b = out.rows.back();
        out.ratio_omega11 = std::abs(a.omega11_residual) / std::abs(b.omega11_residual);
        out.ratio_omega12 = std::abs(a.omega12) / std::abs(b.omega12);
        out.ratio_omega22 = std::abs(a.omega22_residual) / std::abs(b.omega22_residual);
        out.ratio_z2 = std::abs(a.z2_residual) / std::abs(b.z2_residual);
    }
    return out;
}

} // namespace genus2
