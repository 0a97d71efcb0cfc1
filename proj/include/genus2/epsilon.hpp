#pragma once

#include <vector>

#include "catalan.hpp"
#include "partition.hpp"
#include "sewing.hpp"

namespace genus2 {

struct EpsilonPoint {
    cplx tau1, tau2, eps;
};

inline bool in_epsilon_domain(const EpsilonPoint& e)
{
    if (!(e.tau1.imag() > 0 && e.tau2.imag() > 0)) return false;
    return std::abs(e.eps) < 0.25 * Torus(e.tau1).min_distance() * Torus(e.tau2).min_distance();
}

struct EpsilonZ2 {
    cplx value;
    double eps4_fraction; // |eps^4 term| / |bracket|
};

// Two-boson partition function in the two-tori sewing to O(eps^4):
// (eta(t1)^2 eta(t2)^2)^{-1} [1 + E2 E2 eps^2 + (E2^2 E2^2 + 15 E4 E4) eps^4].
inline EpsilonZ2 epsilon_z2_series(const EpsilonPoint& e)
{
    if (!in_epsilon_domain(e)) throw domain_error("outside epsilon domain");
    Torus t1(e.tau1), t2(e.tau2);
    cplx a2 = t1.E(2), b2 = t2.E(2), a4 = t1.E(4), b4 = t2.E(4);
    cplx e2 = e.eps * e.eps;
    cplx quartic = (a2 * a2 * b2 * b2 + 15.0 * a4 * b4) * e2 * e2;
    cplx bracket = 1.0 + a2 * b2 * e2 + quartic;
    cplx eta1 = t1.eta(), eta2 = t2.eta();
    EpsilonZ2 out;
    out.value = bracket / (eta1 * eta1 * eta2 * eta2);
    out.eps4_fraction = std::abs(quartic) / std::abs(bracket);
    if (out.eps4_fraction > 1e-3) throw domain_error("series unreliable");
    return out;
}

struct TwoToriCoordinates {
    EpsilonPoint point;
    double neglected_w; // |w|^6 scale of the dropped terms
    double neglected_chi;
    bool trusted;
};

// Leading two-tori coordinates as explicit series in w with log chi in place of log f(chi):
// 2 pi i tau1 = 2 pi i tau + w^2/12 + E2 w^4/144, 2 pi i tau2 = log chi + E4 w^4/12,
// eps = -w - E2 w^3 / 12.
inline TwoToriCoordinates two_tori_coordinates(cplx tau, cplx w, cplx chi)
{
    Torus t(tau);
    cplx e2 = t.E(2), e4 = t.E(4);
    cplx w2 = w * w;
    TwoToriCoordinates out;
    out.point.tau1 = tau + (w2 / 12.0 + e2 * w2 * w2 / 144.0) / two_pi_i;
    out.point.tau2 = (std::log(chi) + e4 * w2 * w2 / 12.0) / two_pi_i;
    out.point.eps = -w - e2 * w * w2 / 12.0;
    out.neglected_w = std::pow(std::abs(w), 6);
    out.neglected_chi = std::abs(chi);
    out.trusted = std::abs(w) < 0.5 && std::abs(chi) < 0.05;
    return out;
}

// Inversion of Omega(tau1, tau2, eps) near Omega_12 = 0, with r = 2 pi i Omega_12:
// 2 pi i tau1 = 2 pi i O11 - E2(O22) r^2 + 5 E2(O11) E4(O22) r^4,
// eps = -r + E2(O11) E2(O22) r^3,
// 2 pi i tau2 = 2 pi i O22 - E2(O11) r^2 + 5 E2(O22) E4(O11) r^4.
inline EpsilonPoint epsilon_from_omega(const Mat2& omega)
{
    Torus t11(omega(0, 0)), t22(omega(1, 1));
    cplx r = two_pi_i * omega(0, 1);
    cplx r2 = r * r;
    EpsilonPoint e;
    e.tau1 = omega(0, 0) + (-t22.E(2) * r2 + 5.0 * t11.E(2) * t22.E(4) * r2 * r2) / two_pi_i;
    e.eps = -r + t11.E(2) * t22.E(2) * r * r2;
    e.tau2 = omega(1, 1) + (-t11.E(2) * r2 + 5.0 * t22.E(2) * t11.E(4) * r2 * r2) / two_pi_i;
    return e;
}

// Forward map to O(eps^4); used to check the inversion.
inline Mat2 omega_from_epsilon(const EpsilonPoint& e)
{
    Torus t1(e.tau1), t2(e.tau2);
    cplx a = t1.E(2), b = t2.E(2);
    cplx e2 = e.eps * e.eps;
    Mat2 o;
    o(0, 0) = e.tau1 + (b * e2 + a * b * b * e2 * e2) / two_pi_i;
    o(0, 1) = o(1, 0) = (-e.eps - a * b * e.eps * e2) / two_pi_i;
    o(1, 1) = e.tau2 + (a * e2 + a * a * b * e2 * e2) / two_pi_i;
    return o;
}

// (tau1, tau2, eps) for the point (tau, w, -w^2 chi) by way of its period matrix.
inline EpsilonPoint epsilon_coordinates(cplx tau, cplx w, cplx chi, int K)
{
    SewingSystem s({tau, w, -w * w * chi}, K);
    Mat2 o = s.omega();
    o(1, 1) -= std::round(o(1, 1).real());
    return epsilon_from_omega(o);
}

// G(chi) = 1/12 + E2(q = f(chi)) as an exact series in chi.
inline QSeries g_chi_series(int N)
{
    QSeries e2 = eisenstein_series<Rational>(2, N + 1);
    QSeries g = e2.compose(catalan_series(N));
    return g + QSeries::constant(Rational(1, 12), g.prec());
}

struct RatioRow {
    cplx w;
    cplx T;          // Z_eps / Z_rho
    cplx scaled;     // f(chi)^{1/12} T
    cplx residual;   // scaled - (1 - E4 w^4 / 288)
};

struct RatioReport {
    cplx tau;
    double chi;
    std::vector<RatioRow> rows;
    std::vector<double> ratios; // |residual(w)| / |residual(w/2)|
};

inline RatioRow ratio_at(cplx tau, cplx w, double chi, int K)
{
    EpsilonPoint e = epsilon_coordinates(tau, w, chi, K);
    cplx zeps = epsilon_z2_series(e).value;
    cplx zrho = heisenberg_Z2({tau, w, -w * w * chi}, K, 2).value;
    Torus t(tau);
    RatioRow row;
    row.w = w;
    row.T = zeps / zrho;
    row.scaled = std::pow(catalan_value(chi), 1.0 / 12.0) * row.T;
    cplx w2 = w * w;
    row.residual = row.scaled - (1.0 - t.E(4) * w2 * w2 / 288.0);
    return row;
}

inline RatioReport ratio_comparison(cplx tau, cplx w0, double chi, int halvings, int K = 40)
{
    RatioReport out;
    out.tau = tau;
    out.chi = chi;
    for (int h = 0; h <= halvings; ++h) out.rows.push_back(ratio_at(tau, w0 * std::pow(0.5, h), chi, K));
    for (std::size_t i = 1; i < out.rows.size(); ++i)
        out.ratios.push_back(std::abs(out.rows[i - 1].residual) / std::abs(out.rows[i].residual));
    return out;
}

} // namespace genus2
