#include <gtest/gtest.h>

#include "genus2/sewing.hpp"

using namespace genus2;

namespace {
const SewingPoint standard{cplx(0, 1.2), cplx(0.7, 0.4), cplx(0.01, 0)};
}

TEST(SewingDomain, Validation)
{
    Torus t(standard.tau);
    EXPECT_TRUE(in_sewing_domain(t, standard));
    SewingPoint bad = standard;
    bad.rho = 0.25 * std::norm(standard.w) * 1.01;
    EXPECT_FALSE(in_sewing_domain(t, bad));
    EXPECT_THROW(SewingSystem(bad, 12), domain_error);
    bad.rho = 0;
    EXPECT_THROW(SewingSystem(bad, 12), domain_error);
    // translates of w by lattice vectors see the same nearest lattice point
    SewingPoint moved = standard;
    moved.w += two_pi_i * (2.0 * standard.tau - 1.0);
    EXPECT_TRUE(in_sewing_domain(t, moved));
}

TEST(SewingMatrix, TransposeSymmetry)
{
    SewingSystem s(standard, 8);
    // R_ab(k,l) = R_{bar a, bar b}(l,k)
    for (int k = 1; k <= 8; ++k)
        for (int l = 1; l <= 8; ++l)
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b) {
                    cplx lhs = s.R()(SewingSystem::index(k, a), SewingSystem::index(l, b));
                    cplx rhs = s.R()(SewingSystem::index(l, 3 - a), SewingSystem::index(k, 3 - b));
                    EXPECT_LT(std::abs(lhs - rhs), 1e-14 * (1 + std::abs(lhs)));
                }
}

TEST(SewingMatrix, SpectralRadiusAndDeterminant)
{
    SewingSystem s(standard, 12);
    EXPECT_GT(s.spectral_radius(), 0);
    EXPECT_LT(s.spectral_radius(), 0.2);
    // log det(I - R) = -sum Tr R^n / n
    Mat Rn = Mat::Identity(s.dim(), s.dim());
    cplx acc = 0;
    for (int n = 1; n < 60; ++n) {
        Rn = Rn * s.R();
        acc -= Rn.trace() / double(n);
    }
    EXPECT_LT(std::abs(std::exp(acc) - s.det()), 1e-13);
}

TEST(PeriodMatrix, SymmetricAndInSiegelSpace)
{
    PeriodMatrix pm = period_matrix(standard);
    EXPECT_EQ(pm.omega(0, 1), pm.omega(1, 0));
    EXPECT_TRUE(in_siegel_half_space(pm.omega));
    EXPECT_LT(pm.tail_bound, 1e-12);
    EXPECT_EQ(pm.branch_tag, "principal-log");
    // leading order in rho
    EXPECT_LT(std::abs(pm.omega(0, 0) - standard.tau), 0.01);
    EXPECT_LT(std::abs(pm.omega(0, 1) - standard.w / two_pi_i), 0.01);
}

TEST(PeriodMatrix, ConvergesInK)
{
    Mat2 o12 = SewingSystem(standard, 12).omega();
    Mat2 o24 = SewingSystem(standard, 24).omega();
    EXPECT_LT((o12 - o24).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PeriodMatrix, LinearOrderInRho)
{
    // sigma of the (1,1) block of (I-R)^{-1} is 2 + O(rho), so
    // Omega_11 = tau - 2 rho / 2 pi i + O(rho^2).
    SewingPoint p = standard;
    p.rho = 1e-6;
    SewingSystem s(p, 6);
    cplx slope = (s.omega()(0, 0) - p.tau) / p.rho;
    EXPECT_LT(std::abs(slope - (-2.0 / two_pi_i)), 1e-4);
}

class NormalisedForms : public ::testing::TestWithParam<cplx> {};

TEST_P(NormalisedForms, ACycleIntegrals)
{
    SewingPoint p = standard;
    p.rho = GetParam();
    SewingSystem s(p, 12);
    auto nu1 = [&](cplx x) { return s.nu1(x); };
    auto nu2 = [&](cplx x) { return s.nu2(x); };
    EXPECT_LT(std::abs(integrate_a1(s, nu1) - two_pi_i), 1e-10);
    EXPECT_LT(std::abs(integrate_a1(s, nu2)), 1e-10);
    EXPECT_LT(std::abs(integrate_a2(s, nu1)), 1e-10);
    EXPECT_LT(std::abs(integrate_a2(s, nu2) - two_pi_i), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Rho, NormalisedForms,
                         ::testing::Values(cplx(0.01, 0), cplx(0.03, -0.04), cplx(-0.05, 0.02)));

TEST(BilinearForm, SymmetricWithDoublePole)
{
    SewingSystem s(standard, 12);
    cplx x(-1.3, 0.8), y(2.1, -2.0);
    EXPECT_LT(rel_err(s.omega2(x, y), s.omega2(y, x)), 1e-12);
    // s2 is 6 times the constant term of omega2 at the diagonal
    double h = 1e-3;
    cplx lim = 0.5 * (s.omega2(x + h, x) + s.omega2(x - h, x)) - 1.0 / (h * h);
    EXPECT_LT(std::abs(6.0 * lim - s.s2(x)), 1e-5);
}

TEST(BilinearForm, VanishingAPeriods)
{
    SewingSystem s(standard, 12);
    cplx x(-1.3, 0.8);
    cplx i1 = integrate_a1(s, [&](cplx y) { return s.omega2(x, y); });
    cplx i2 = integrate_a2(s, [&](cplx y) { return s.omega2(x, y); });
    EXPECT_LT(std::abs(i1), 1e-10);
    EXPECT_LT(std::abs(i2), 1e-10);
}

TEST(Holomorphy, PeriodMatrixAndForms)
{
    auto omega_w = [&](int i, int j) {
        return [=](cplx w) {
            SewingPoint p = standard;
            p.w = w;
            return SewingSystem(p, 12).omega()(i, j);
        };
    };
    auto omega_rho = [&](int i, int j) {
        return [=](cplx rho) {
            SewingPoint p = standard;
            p.rho = rho;
            return SewingSystem(p, 12).omega()(i, j);
        };
    };
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            EXPECT_LT(cauchy_riemann_residual(omega_w(i, j), standard.w, 1e-5), 1e-6);
            EXPECT_LT(cauchy_riemann_residual(omega_rho(i, j), standard.rho, 1e-6), 1e-6);
        }
    SewingSystem s(standard, 12);
    auto nu1 = [&](cplx x) { return s.nu1(x); };
    double r1 = cauchy_riemann_residual(nu1, cplx(-1, 1), 1e-2);
    double r2 = cauchy_riemann_residual(nu1, cplx(-1, 1), 5e-3);
    EXPECT_NEAR(r1 / r2, 4.0, 0.2);
}
