#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elliptic.hpp"
#include "quadrature.hpp"

namespace genus2 {

using Mat = Eigen::MatrixXcd;
using RowVec = Eigen::RowVectorXcd;
using Mat2 = Eigen::Matrix2cd;

struct SewingPoint {
    cplx tau;
    cplx w;
    cplx rho;
};

inline constexpr int default_K = 12;

// Distance from w to the nearest lattice point.
inline double lattice_distance(const Torus& t, cplx w)
{
    return std::abs(t.reduce(w).z);
}

// The sewing domain: |w - lambda| > 2 |rho|^{1/2} > 0 for every lattice point.
inline bool in_sewing_domain(const Torus& t, const SewingPoint& p)
{
    return std::abs(p.rho) > 0 && lattice_distance(t, p.w) > 2.0 * std::sqrt(std::abs(p.rho));
}

inline void validate_sewing_point(const Torus& t, const SewingPoint& p)
{
    if (!(std::abs(p.rho) > 0)) throw domain_error("outside sewing domain: rho = 0");
    if (!in_sewing_domain(t, p)) throw domain_error("outside sewing domain");
}

struct PeriodMatrix {
    Mat2 omega;
    int K = 0;
    double spectral_radius = 0;
    double tail_bound = 0;
    std::string branch_tag;
    int branch_index = 0; // Re Omega_22 lies in [n - 1/2, n + 1/2)
};

// Everything at a fixed point (tau, w, rho) with labels k = 1..K, a = 1, 2.
// Index of (k, a) in vectors and matrices is 2(k-1) + (a-1).
class SewingSystem {
public:
    SewingSystem(const SewingPoint& p, int K = default_K, int q_order = 20)
        : p_(p), K_(K), torus_(p.tau, q_order)
    {
        if (K < 1) throw std::invalid_argument("truncation K must be positive");
        validate_sewing_point(torus_, p_);
        sqrt_rho_ = std::sqrt(p.rho);
        rho_half_.resize(2 * K + 3);
        rho_half_[0] = 1.0;
        for (std::size_t j = 1; j < rho_half_.size(); ++j) rho_half_[j] = rho_half_[j - 1] * sqrt_rho_;
        build();
    }

    static int index(int k, int a) { return 2 * (k - 1) + (a - 1); }

    const SewingPoint& point() const { return p_; }
    const Torus& torus() const { return torus_; }
    int K() const { return K_; }
    int dim() const { return 2 * K_; }
    cplx sqrt_rho() const { return sqrt_rho_; }
    // rho^{j/2} with the principal square root.
    cplx rho_pow_half(int j) const { return rho_half_.at(j); }

    const Mat& R() const { return R_; }
    const Mat& resolvent() const { return M_; } // (I - R)^{-1}
    const RowVec& d() const { return d_; }
    const RowVec& dbar() const { return dbar_; }
    cplx det() const { return det_; }
    // log det(I - R) = sum log(1 - lambda_i); with every |lambda_i| < 1 this is the
    // branch reached continuously from rho = 0.
    cplx log_det() const { return log_det_; }
    double spectral_radius() const { return spectral_radius_; }

    // R_ab(k,l) = -(rho^{(k+l)/2} / sqrt(kl)) [[D(k,l,w), C(k,l)], [C(k,l), D(l,k,w)]]_ab
    cplx R_entry(int k, int l, int a, int b) const
    {
        // rho^{k/2} and rho^{l/2} applied on either side of the coefficient so that small rho
        // does not underflow before the large P_{k+l} factor is applied
        cplx coef = a != b ? torus_.C(k, l) : (a == 1 ? torus_.D(k, l, p_.w) : torus_.D(l, k, p_.w));
        return -(rho_pow_half(k) * coef) * rho_pow_half(l) / std::sqrt(double(k) * l);
    }

    // a_1(k,x) = sqrt(k) rho^{k/2} P_{k+1}(x), a_2(k,x) = a_1(k, x - w)
    RowVec a_form(cplx x) const { return forms(x, false); }
    RowVec a_form_bar(cplx x) const { return forms(x, true); }

    // sum of entries with k = 1 of a row vector
    static cplx sigma1(const RowVec& v) { return v(0) + v(1); }

    // sum of the (1,1) block of (I - R)^{-1}
    cplx sigma11() const { return M_(0, 0) + M_(0, 1) + M_(1, 0) + M_(1, 1); }

    cplx omega2(cplx x, cplx y) const
    {
        return torus_.P(2, x - y) - (a_form(x) * M_ * a_form_bar(y).transpose())(0, 0);
    }

    cplx nu1(cplx x) const { return 1.0 - sqrt_rho_ * sigma1(a_form(x) * M_); }

    cplx nu2(cplx x) const
    {
        return torus_.P(1, x - p_.w) - torus_.P(1, x) - (a_form(x) * M_ * dbar_.transpose())(0, 0);
    }

    cplx s2(cplx x) const
    {
        return 6.0 * (torus_.E(2) - (a_form(x) * M_ * a_form_bar(x).transpose())(0, 0));
    }

    // 2 pi i Omega entries.
    cplx two_pi_i_omega11() const { return two_pi_i * p_.tau - p_.rho * sigma11(); }
    cplx two_pi_i_omega12() const { return p_.w - sqrt_rho_ * sigma1(d_ * M_); }
    cplx log_term() const
    {
        BranchValue k = torus_.prime_form(p_.w);
        return std::log(-p_.rho / (k.value * k.value));
    }
    cplx two_pi_i_omega22() const { return log_term() - (d_ * M_ * dbar_.transpose())(0, 0); }

    Mat2 omega() const
    {
        Mat2 o;
        o(0, 0) = two_pi_i_omega11() / two_pi_i;
        o(0, 1) = o(1, 0) = two_pi_i_omega12() / two_pi_i;
        o(1, 1) = two_pi_i_omega22() / two_pi_i;
        return o;
    }

    std::string branch_tag() const
    {
        BranchValue k = torus_.prime_form(p_.w);
        return std::string("principal-log") + (k.continued ? "+continued-prime-form" : "");
    }

    // max-row-sum norm of R, used for geometric tail bounds of Neumann series
    double norm_inf() const { return R_.cwiseAbs().rowwise().sum().maxCoeff(); }

private:
    RowVec forms(cplx x, bool bar) const
    {
        RowVec v(dim());
        for (int k = 1; k <= K_; ++k) {
            cplx s = std::sqrt(double(k)) * rho_pow_half(k);
            cplx f1 = s * torus_.P(k + 1, x);
            cplx f2 = s * torus_.P(k + 1, x - p_.w);
            v(index(k, 1)) = bar ? f2 : f1;
            v(index(k, 2)) = bar ? f1 : f2;
        }
        return v;
    }

    void build()
    {
        int n = dim();
        R_.resize(n, n);
        for (int k = 1; k <= K_; ++k)
            for (int l = 1; l <= K_; ++l)
                for (int a = 1; a <= 2; ++a)
                    for (int b = 1; b <= 2; ++b) R_(index(k, a), index(l, b)) = R_entry(k, l, a, b);

        d_.resize(n);
        dbar_.resize(n);
        for (int k = 1; k <= K_; ++k) {
            cplx base = rho_pow_half(k) / std::sqrt(double(k)) * (torus_.P(k, p_.w) - torus_.E(k));
            cplx d1 = -base, d2 = (k % 2 ? -1.0 : 1.0) * base;
            d_(index(k, 1)) = d1;
            d_(index(k, 2)) = d2;
            dbar_(index(k, 1)) = d2;
            dbar_(index(k, 2)) = d1;
        }

        // entries far below the largest one only feed denormals into the QR sweeps; they move
        // eigenvalues by far less than roundoff
        double big = R_.cwiseAbs().maxCoeff();
        Mat flushed = R_.unaryExpr([big](cplx x) { return std::abs(x) < 1e-40 * big ? cplx(0) : x; });
        Eigen::ComplexEigenSolver<Mat> es(flushed, false);
        if (es.info() != Eigen::Success) throw domain_error("eigenvalues of R did not converge");
        spectral_radius_ = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(spectral_radius_ < 1.0)) throw domain_error("non-contractive truncation");
        log_det_ = 0;
        for (int i = 0; i < n; ++i) log_det_ += std::log(1.0 - es.eigenvalues()(i));
        Mat A = Mat::Identity(n, n) - R_;
        Eigen::PartialPivLU<Mat> lu(A);
        det_ = lu.determinant();
        M_ = lu.inverse();
    }

    SewingPoint p_;
    int K_;
    Torus torus_;
    cplx sqrt_rho_;
    std::vector<cplx> rho_half_;
    Mat R_, M_;
    RowVec d_, dbar_;
    cplx det_, log_det_;
    double spectral_radius_ = 0;
};

inline bool in_siegel_half_space(const Mat2& omega, double tol = 0)
{
    Eigen::Matrix2d im = omega.imag();
    return im(0, 0) > tol && im.determinant() > tol;
}

// Omega with a truncation estimate from comparing K against K + 2.
inline PeriodMatrix period_matrix(const SewingPoint& p, int K = default_K, int q_order = 20)
{
    SewingSystem s(p, K, q_order);
    PeriodMatrix out;
    out.omega = s.omega();
    out.K = K;
    out.spectral_radius = s.spectral_radius();
    out.branch_tag = s.branch_tag();
    out.branch_index = static_cast<int>(std::floor(out.omega(1, 1).real() + 0.5));
    if (!in_siegel_half_space(out.omega)) throw domain_error("not in H2");
    SewingSystem s2(p, K + 2, q_order);
    Mat2 diff = s2.omega() - out.omega;
    out.tail_bound = diff.cwiseAbs().maxCoeff();
    return out;
}

// Contours on the sewn surface.
struct Cycles {
    // a_1: x = x0 + 2 pi i t, t in [0, 1]
    static cplx a1_start(const SewingSystem& s)
    {
        const Torus& t = s.torus();
        cplx w = s.point().w;
        double span = 2.0 * pi * t.tau().imag();
        double best_c = 0, best_gap = -1;
        for (int i = 0; i < 400; ++i) {
            double c = -0.5 * span + span * (i + 0.5) / 400;
            double gap = 1e300;
            for (int m = -2; m <= 2; ++m)
                for (cplx p : {cplx(0), w}) {
                    cplx lam = p + two_pi_i * double(m) * t.tau();
                    gap = std::min(gap, std::abs(lam.real() - c));
                }
            if (gap > best_gap) best_gap = gap, best_c = c;
        }
        return {best_c, 0.0};
    }

    // radius of the a_2 circle around w
    static double a2_radius(const SewingSystem& s)
    {
        return 0.5 * std::min(lattice_distance(s.torus(), s.point().w), s.torus().min_distance());
    }
};

template <class F>
cplx integrate_a1(const SewingSystem& s, F&& f)
{
    cplx x0 = Cycles::a1_start(s);
    return contour_integral(f, [&](double t) { return x0 + two_pi_i * t; }, [](double) { return two_pi_i; });
}

template <class F>
cplx integrate_a2(const SewingSystem& s, F&& f)
{
    cplx w = s.point().w;
    double r = Cycles::a2_radius(s);
    return contour_integral(
        f, [&](double t) { return w + r * std::exp(two_pi_i * t); },
        [&](double t) { return two_pi_i * r * std::exp(two_pi_i * t); });
}

// Discrete Cauchy-Riemann residual |df/dvbar| / |f| by central differences.
template <class F>
double cauchy_riemann_residual(F&& f, cplx v, double h)
{
    cplx dx = (f(v + h) - f(v - h)) / (2 * h);
    cplx dy = (f(v + I * h) - f(v - I * h)) / (2 * h);
    cplx dbar = 0.5 * (dx + I * dy);
    return std::abs(dbar) / std::max(std::abs(f(v)), 1e-300);
}

} // namespace genus2
