#pragma once

#include <numeric>
#include <string>

#include "partition.hpp"
#include "series.hpp"
#include "sewing.hpp"

namespace genus2 {

struct Gamma1 {
    long long a = 1, b = 0, c = 0, d = 1;

    Gamma1() = default;
    Gamma1(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_)
    {
        if (a * d - b * c != 1) throw std::invalid_argument("SL(2,Z) element must have determinant 1");
    }

    static Gamma1 T() { return {1, 1, 0, 1}; }
    static Gamma1 S() { return {0, -1, 1, 0}; }

    Gamma1 operator*(const Gamma1& o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    bool operator==(const Gamma1& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    cplx automorphy(cplx tau) const { return double(c) * tau + double(d); }
    cplx act(cplx tau) const { return (double(a) * tau + double(b)) / automorphy(tau); }

    std::string str() const
    {
        return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
               std::to_string(d) + "]]";
    }
};

// (tau, w, rho) -> (gamma tau, w / (c tau + d), rho / (c tau + d)^2)
inline SewingPoint gamma1_act(const Gamma1& g, const SewingPoint& p)
{
    cplx j = g.automorphy(p.tau);
    SewingPoint out{g.act(p.tau), p.w / j, p.rho / (j * j)};
    if (!in_sewing_domain(Torus(out.tau), out)) throw domain_error("left domain");
    return out;
}

// (tau, w + 2 pi i (a tau + b), rho)
inline SewingPoint jacobi_translate(long long a, long long b, const SewingPoint& p)
{
    SewingPoint out{p.tau, p.w + two_pi_i * (double(a) * p.tau + double(b)), p.rho};
    if (!in_sewing_domain(Torus(out.tau), out)) throw domain_error("left domain");
    return out;
}

using Mat4i = Eigen::Matrix<long long, 4, 4>;

inline Mat4i sp4_embedding(const Gamma1& g)
{
    Mat4i m = Mat4i::Zero();
    m(0, 0) = g.a;
    m(0, 2) = g.b;
    m(2, 0) = g.c;
    m(2, 2) = g.d;
    m(1, 1) = m(3, 3) = 1;
    return m;
}

inline bool is_symplectic(const Mat4i& m)
{
    Mat4i J = Mat4i::Zero();
    J(0, 2) = J(1, 3) = 1;
    J(2, 0) = J(3, 1) = -1;
    return m.transpose() * J * m == J;
}

// (A Omega + B)(C Omega + D)^{-1}
inline Mat2 sp4_act(const Mat4i& g, const Mat2& omega)
{
    Mat2 A, B, C, D;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            A(i, j) = double(g(i, j));
            B(i, j) = double(g(i, j + 2));
            C(i, j) = double(g(i + 2, j));
            D(i, j) = double(g(i + 2, j + 2));
        }
    Mat2 den = C * omega + D;
    if (std::abs(den.determinant()) < 1e-14) throw domain_error("singular C Omega + D");
    return (A * omega + B) * den.inverse();
}

inline Mat2 sp4_act(const Gamma1& g, const Mat2& omega) { return sp4_act(sp4_embedding(g), omega); }

// Dedekind sum s(d, c) for c > 0.
inline Rational dedekind_sum(long long d, long long c)
{
    auto saw = [](Rational x) -> Rational {
        BigInt fl = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
        if (x < 0 && fl * boost::multiprecision::denominator(x) != boost::multiprecision::numerator(x)) fl -= 1;
        Rational frac = x - Rational(fl);
        if (frac == 0) return 0;
        return frac - Rational(1, 2);
    };
    Rational s = 0;
    for (long long r = 1; r < c; ++r) s += saw(Rational(r, c)) * saw(Rational(d * r, c));
    return s;
}

// chi(gamma) from eta(gamma tau)^{-2} = chi eta(tau)^{-2} (c tau + d)^{-1} via the Dedekind-sum
// form of the eta multiplier.
inline cplx eta_character_dedekind(const Gamma1& g)
{
    if (g.c == 0) return (g.d == 1 ? 1.0 : -1.0) * std::exp(-I * pi * double(g.b * g.d) / 6.0);
    if (g.c < 0) return -eta_character_dedekind({-g.a, -g.b, -g.c, -g.d});
    Rational phase = Rational(g.a + g.d, 12 * g.c) - dedekind_sum(g.d, g.c);
    return I * std::exp(-two_pi_i * static_cast<double>(phase));
}

struct EtaCharacter {
    cplx value;   // snapped twelfth root of unity
    int k = 0;    // value = exp(2 pi i k / 12)
    double snap_distance = 0;
};

// Numerically at a reference tau0 with c tau0 + d = +-i, snapped to a twelfth root of unity.
inline EtaCharacter eta_character(const Gamma1& g)
{
    cplx tau0 = g.c == 0 ? cplx(0.1, 1.0) : (-double(g.d) + I * (g.c > 0 ? 1.0 : -1.0)) / double(g.c);
    int q_order = 20;
    Torus t(tau0, q_order), tg(g.act(tau0), q_order);
    cplx eg = tg.eta(), e = t.eta();
    cplx raw = (e * e) / (eg * eg) * g.automorphy(tau0);
    double ang = std::arg(raw) / (2 * pi) * 12.0;
    int k = static_cast<int>(std::lround(ang));
    k = ((k % 12) + 12) % 12;
    EtaCharacter out;
    out.k = k;
    out.value = std::exp(two_pi_i * (double(k) / 12.0));
    out.snap_distance = std::abs(raw - out.value);
    if (out.snap_distance > 1e-6) throw domain_error("eta character is not a twelfth root of unity");
    return out;
}

struct EquivarianceResult {
    cplx lhs, rhs;
    double residual;
};

// Z_{M^2}(gamma pt) (c Omega_11 + d) against chi(gamma) Z_{M^2}(pt).
inline EquivarianceResult z2_equivariance(const Gamma1& g, const SewingPoint& p, int K = default_K)
{
    SewingPoint gp = gamma1_act(g, p);
    SewingSystem s(p, K);
    cplx factor = double(g.c) * s.omega()(0, 0) + double(g.d);
    EquivarianceResult out;
    out.lhs = heisenberg_Z2(gp, K, 2).value * factor;
    out.rhs = eta_character(g).value * heisenberg_Z2(p, K, 2).value;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

// Rank 24: Z(gamma pt) (c Omega_11 + d)^12 against Z(pt).
inline EquivarianceResult z24_equivariance(const Gamma1& g, const SewingPoint& p, int K = default_K)
{
    SewingPoint gp = gamma1_act(g, p);
    SewingSystem s(p, K);
    cplx factor = double(g.c) * s.omega()(0, 0) + double(g.d);
    EquivarianceResult out;
    out.lhs = heisenberg_Z2(gp, K, 24).value * std::pow(factor, 12);
    out.rhs = heisenberg_Z2(p, K, 24).value;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

struct OmegaEquivariance {
    Mat2 transformed; // Omega(gamma pt)
    Mat2 acted;       // gamma . Omega(pt)
    double residual;  // max entry difference, Omega_22 modulo 1
};

inline OmegaEquivariance omega_equivariance(const Gamma1& g, const SewingPoint& p, int K = default_K)
{
    OmegaEquivariance out;
    out.transformed = SewingSystem(gamma1_act(g, p), K).omega();
    out.acted = sp4_act(g, SewingSystem(p, K).omega());
    Mat2 d = out.transformed - out.acted;
    d(1, 1) -= std::round(d(1, 1).real());
    out.residual = d.cwiseAbs().maxCoeff();
    return out;
}

struct KappaIdentity {
    cplx kappa;
    cplx det_transformed;   // det(I - R') at gamma pt
    cplx det_product;       // det(I - kappa S) det(I - R)
    cplx det_kappa;         // det(I - kappa S), from the explicit matrix
    cplx det_kappa_sigma;   // 1 - kappa sigma((I - R)^{-1}(1,1))
    cplx det_kappa_omega;   // (c Omega_11 + d) / (c tau + d)
    double entry_residual;  // max |R' - R - kappa Delta| (up to the sign of sqrt(rho'))
};

inline KappaIdentity kappa_identity(const Gamma1& g, const SewingPoint& p, int K = default_K)
{
    SewingSystem s(p, K), sg(gamma1_act(g, p), K);
    int n = s.dim();
    KappaIdentity out;
    cplx j = g.automorphy(p.tau);
    out.kappa = p.rho / two_pi_i * double(g.c) / j;
    Mat S = Mat::Zero(n, n);
    const Mat& M = s.resolvent();
    for (int a = 0; a < 2; ++a)
        for (int col = 0; col < n; ++col) S(a, col) = M(0, col) + M(1, col);
    out.det_kappa = (Mat::Identity(n, n) - out.kappa * S).determinant();
    out.det_transformed = sg.det();
    out.det_product = out.det_kappa * s.det();
    out.det_kappa_sigma = 1.0 - out.kappa * (M(0, 0) + M(0, 1) + M(1, 0) + M(1, 1));
    out.det_kappa_omega = (double(g.c) * s.omega()(0, 0) + double(g.d)) / j;

    // sqrt(rho') = sign sqrt(rho) / (c tau + d); odd k + l entries carry the sign
    double sign = std::real(sg.sqrt_rho() * j / s.sqrt_rho()) > 0 ? 1.0 : -1.0;
    double worst = 0;
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= K; ++l)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    int r = SewingSystem::index(k, a + 1), c = SewingSystem::index(l, b + 1);
                    cplx want = s.R()(r, c) + (k == 1 && l == 1 ? out.kappa : 0.0);
                    cplx got = sg.R()(r, c) * ((k + l) % 2 ? sign : 1.0);
                    worst = std::max(worst, std::abs(got - want));
                }
    out.entry_residual = worst;
    return out;
}

} // namespace genus2
