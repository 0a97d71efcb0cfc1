#include <gtest/gtest.h>

#include <algorithm>

#include "genus2/necklace.hpp"
#include "genus2/partition.hpp"

using namespace genus2;

namespace {

const cplx tau0{0, 1.2};
const cplx w0{0.7, 0.4};

SewingPoint standard(cplx rho = 0.01) { return {tau0, w0, rho}; }

// truncation bound plus a double-precision allowance for the summation itself
double bound(double tail, cplx value) { return tail + 1e-14 * (1 + std::abs(value)); }

} // namespace

TEST(HeisenbergZ2, RhoZeroIsInverseEta)
{
    Torus t(tau0);
    auto z = heisenberg_Z2({tau0, w0, 0.0});
    EXPECT_EQ(z.value, 1.0 / t.eta());
    EXPECT_EQ(heisenberg_Z2({tau0, w0, 0.0}, 12, 3).value, std::pow(1.0 / t.eta(), 3));
    auto small = heisenberg_Z2(standard(1e-9));
    EXPECT_LT(rel_err(small.value, 1.0 / t.eta()), 1e-7);
}

TEST(HeisenbergZ2, RankIsPower)
{
    auto z1 = heisenberg_Z2(standard(cplx(0.02, -0.01)));
    auto z2 = heisenberg_Z2(standard(cplx(0.02, -0.01)), 12, 2);
    EXPECT_LT(rel_err(z2.value, z1.value * z1.value), 1e-13);
    EXPECT_LT(z1.tail_bound, 1e-12);
}

TEST(HeisenbergZ2, EigenvalueLogMatchesRayContinuation)
{
    for (cplx rho : {cplx(0.01), cplx(-0.03, 0.05), cplx(0.0, -0.1)}) {
        SewingSystem s(standard(rho));
        cplx ray = log_det_along_ray(standard(rho), 12);
        EXPECT_LT(std::abs(s.log_det() - ray), 1e-12) << rho;
        EXPECT_LT(rel_err(std::exp(s.log_det()), s.det()), 1e-12);
    }
}

TEST(HeisenbergZ2, LoopReturnsToStart)
{
    // Follow det^{-1/2} around |rho| = 0.05 by small steps.
    const int steps = 256;
    cplx start = std::pow(SewingSystem(standard(0.05)).det(), -0.5);
    cplx cur = start;
    for (int j = 1; j <= steps; ++j) {
        cplx rho = 0.05 * std::exp(two_pi_i * (double(j) / steps));
        cplx v = std::pow(SewingSystem(standard(rho)).det(), -0.5);
        if (std::abs(v - cur) > std::abs(v + cur)) v = -v;
        cur = v;
    }
    EXPECT_LT(std::abs(cur - start), 1e-12);
    EXPECT_LT(std::abs(heisenberg_Z2(standard(0.05)).value * SewingSystem(standard(0.05)).torus().eta() - start),
              1e-12);
}

TEST(HeisenbergZ2, HolomorphicInEachVariable)
{
    const double h = 1e-5;
    auto z = [](cplx tau, cplx w, cplx rho) { return heisenberg_Z2({tau, w, rho}).value; };
    SewingPoint p = standard();
    EXPECT_LT(cauchy_riemann_residual([&](cplx v) { return z(v, p.w, p.rho); }, p.tau, h), 1e-6);
    EXPECT_LT(cauchy_riemann_residual([&](cplx v) { return z(p.tau, v, p.rho); }, p.w, h), 1e-6);
    EXPECT_LT(cauchy_riemann_residual([&](cplx v) { return z(p.tau, p.w, v); }, p.rho, h), 1e-6);
}

TEST(HeisenbergZ2, DeterminantNonzeroOnGrid)
{
    for (double re : {-0.04, 0.0, 0.04})
        for (double im : {-0.04, 0.0, 0.04}) {
            if (re == 0 && im == 0) continue;
            for (cplx w : {w0, cplx(1.5, -2.0), cplx(3.0, 1.0)}) {
                SewingSystem s({tau0, w, cplx(re, im)});
                EXPECT_GT(std::abs(s.det()), 0.5);
            }
        }
}

TEST(Necklace, FkmCounts)
{
    // necklaces of length n over k letters: (1/n) sum_{d|n} phi(d) k^{n/d}
    int count = 0, lyndon = 0;
    for_each_necklace(2, 6, [&](const std::vector<int>&, int p) {
        ++count;
        if (p == 6) ++lyndon;
    });
    EXPECT_EQ(count, 14);
    EXPECT_EQ(lyndon, 9);
    count = 0;
    for_each_necklace(8, 1, [&](const std::vector<int>&, int) { ++count; });
    EXPECT_EQ(count, 8);
}

TEST(Necklace, CycleSumIsTrace)
{
    SewingSystem s(standard(0.05), 4);
    Mat Rn = Mat::Identity(8, 8);
    for (int n = 1; n <= 6; ++n) {
        Rn = Rn * s.R();
        EXPECT_LT(std::abs(cycle_sum(s, n, 4) - Rn.trace() / double(n)), 1e-15) << n;
    }
}

class NecklaceDuality : public ::testing::TestWithParam<double> {};

TEST_P(NecklaceDuality, PeriodMatrix)
{
    NecklaceConfig cfg;
    SewingSystem s(standard(GetParam()), cfg.max_label);
    Mat2 g = omega_from_graphs(s, cfg), m = s.omega();
    RowVec e1 = unit_label_one(s.dim());
    double tail = necklace_tail_bound(s, e1, e1, cfg.max_necklace_len, cfg.max_label) * std::abs(s.point().rho) +
                  necklace_tail_bound(s, s.d(), e1, cfg.max_necklace_len, cfg.max_label) * std::abs(s.sqrt_rho()) +
                  necklace_tail_bound(s, s.d(), s.dbar(), cfg.max_necklace_len, cfg.max_label);
    tail /= 2 * pi;
    EXPECT_LT(tail, 1e-6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_LE(std::abs(g(i, j) - m(i, j)), bound(tail, m(i, j))) << i << j;
}

TEST_P(NecklaceDuality, Forms)
{
    NecklaceConfig cfg;
    SewingSystem s(standard(GetParam()), cfg.max_label);
    cplx x{0.3, 1.9}, y{-0.9, 0.6};
    int L = cfg.max_necklace_len, K = cfg.max_label;
    EXPECT_LE(std::abs(omega2_from_graphs(s, x, y, cfg) - s.omega2(x, y)),
              bound(necklace_tail_bound(s, s.a_form(x), s.a_form_bar(y), L, K), s.omega2(x, y)));
    EXPECT_LE(std::abs(nu1_from_graphs(s, x, cfg) - s.nu1(x)),
              bound(std::abs(s.sqrt_rho()) * necklace_tail_bound(s, s.a_form(x), unit_label_one(s.dim()), L, K),
                    s.nu1(x)));
    EXPECT_LE(std::abs(nu2_from_graphs(s, x, cfg) - s.nu2(x)),
              bound(necklace_tail_bound(s, s.a_form(x), s.dbar(), L, K), s.nu2(x)));
}

TEST_P(NecklaceDuality, CycleProduct)
{
    NecklaceConfig cfg;
    SewingSystem s(standard(GetParam()), cfg.max_label);
    CycleProduct c = rotationless_cycle_product(s, cfg);
    cplx det_form = std::exp(-0.5 * s.log_det());
    EXPECT_LE(std::abs(c.value - det_form), bound(c.tail_bound, det_form));
    EXPECT_LT(c.tail_bound, 1e-6);
    cplx z = z2_from_cycles(s.point(), cfg);
    EXPECT_LT(rel_err(z, heisenberg_Z2(s.point(), cfg.max_label).value), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Rho, NecklaceDuality, ::testing::Values(0.01, 0.05));

TEST(Necklace, LengthOneCycles)
{
    NecklaceConfig cfg{1, 1, 4};
    SewingSystem s(standard(0.01), 4);
    CycleProduct c = rotationless_cycle_product(s, cfg);
    EXPECT_EQ(c.n_cycles, 8);
    cplx direct = 1.0;
    for (int i = 0; i < 8; ++i) direct *= std::pow(1.0 - s.R()(i, i), -0.5);
    EXPECT_LT(rel_err(c.value, direct), 1e-14);
}

TEST(Necklace, RejectsLabelsBeyondTruncation)
{
    SewingSystem s(standard(), 3);
    RowVec e1 = unit_label_one(s.dim());
    EXPECT_THROW(necklace_sum(s, e1, e1, 4, 4), std::invalid_argument);
}

TEST(NPoint, OddAndTwoPoint)
{
    SewingPoint p = standard();
    cplx x1{0.3, 1.9}, x2{-0.9, 0.6};
    EXPECT_EQ(heisenberg_npoint(p, {x1}), cplx(0.0));
    EXPECT_EQ(heisenberg_npoint(p, {x1, x2, cplx(1.1, -0.4)}), cplx(0.0));
    SewingSystem s(p);
    EXPECT_LT(rel_err(heisenberg_npoint(p, {x1, x2}), heisenberg_Z2(p).value * s.omega2(x1, x2)), 1e-14);
    EXPECT_THROW(heisenberg_npoint(p, {x1, x1}), domain_error);
}

TEST(NPoint, FourPointSymmetric)
{
    SewingPoint p = standard();
    std::vector<cplx> xs{{0.3, 1.9}, {-0.9, 0.6}, {1.1, -0.4}, {2.0, 3.1}};
    cplx base = heisenberg_npoint(p, xs);
    std::vector<int> perm{0, 1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<cplx> ys;
        for (int i : perm) ys.push_back(xs[i]);
        EXPECT_LT(rel_err(heisenberg_npoint(p, ys), base), 1e-9);
    }
}

TEST(Virasoro, OnePoint)
{
    SewingPoint p = standard();
    SewingSystem s(p);
    cplx x{0.3, 1.9};
    cplx v = virasoro_one_point(p, x);
    EXPECT_LT(rel_err(v / heisenberg_Z2(p).value, s.s2(x) / 12.0), 1e-14);
    EXPECT_LT(rel_err(virasoro_one_point(p, x + two_pi_i), v), 1e-10);
    SewingPoint tiny = standard(1e-10);
    Torus t(tau0);
    EXPECT_LT(rel_err(virasoro_one_point(tiny, x), t.E(2) / 2.0 / t.eta()), 1e-7);
    EXPECT_LT(rel_err(virasoro_one_point(p, x, 12, 2), 2.0 * s.s2(x) / 12.0 * std::pow(heisenberg_Z2(p).value, 2)),
              1e-13);
}

TEST(Degeneration, CatalanValue)
{
    double chi = 0.1;
    double f = catalan_value(chi);
    EXPECT_NEAR(f, chi * (1 + f) * (1 + f), 1e-15);
    Torus t(tau0);
    EXPECT_LT(rel_err(degenerate_limit(tau0, 0.0), 1.0 / t.eta()), 1e-15);
    EXPECT_LT(rel_err(degenerate_limit(tau0, f, 2), std::pow(degenerate_limit(tau0, f), 2)), 1e-14);
}

TEST(Degeneration, QuadraticApproach)
{
    auto r = degeneration_limit_check(tau0, 0.1, cplx(0.2, 0.1), 2);
    EXPECT_NEAR(r.ratio_omega11, 4.0, 0.5);
    EXPECT_NEAR(r.ratio_omega22, 4.0, 0.5);
    EXPECT_NEAR(r.ratio_z2, 4.0, 0.5);
    EXPECT_NEAR(r.ratio_omega12, 2.0, 0.25);
}
