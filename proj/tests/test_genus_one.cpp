#include <gtest/gtest.h>

#include "genus2/catalan.hpp"
#include "genus2/fock.hpp"
#include "genus2/partition.hpp"

using namespace genus2;

namespace {

Multiplicities mult(std::initializer_list<int> e) { return Multiplicities(e); }

long long double_factorial_odd(int n)
{
    long long v = 1;
    for (int k = n; k > 1; k -= 2) v *= k;
    return v;
}

} // namespace

TEST(Catalan, LowCoefficients)
{
    QSeries f = catalan_series(6);
    std::vector<int> want{0, 1, 2, 5, 14, 42, 132};
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(f[n], Rational(want[n])) << n;
}

TEST(Catalan, QuadraticRelationExact)
{
    QSeries d = catalan_defect(10);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(d[n], 0) << n;
}

TEST(Catalan, PowerClosedForm)
{
    const int N = 10;
    QSeries f = catalan_series(N);
    QSeries fm = QSeries::constant(1, N + 1);
    for (int m = 1; m <= N; ++m) {
        fm = (fm * f).truncate(N + 1);
        QSeries c = catalan_power_closed_form(m, N);
        for (int n = 0; n <= N; ++n) EXPECT_EQ(fm[n], c[n]) << "m=" << m << " n=" << n;
    }
    EXPECT_EQ(catalan_power_closed_form(2, 2)[2], 1);
}

TEST(Catalan, DescendantTraceIsBinomial)
{
    for (int n = 1; n <= 12; ++n)
        for (int m = 1; m <= n; ++m) {
            BigInt direct = descendant_trace_coefficient(n, m);
            EXPECT_EQ(direct, vandermonde_sum(n, m));
            EXPECT_EQ(direct, binomial(2 * n - 1, n - m));
        }
}

TEST(Catalan, HeisenbergDimensions)
{
    auto p = heisenberg_dimensions(1, 10);
    std::vector<int> want{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int m = 0; m <= 10; ++m) EXPECT_EQ(p[m], want[m]);
    auto p2 = heisenberg_dimensions(2, 4);
    std::vector<int> want2{1, 2, 5, 10, 20};
    for (int m = 0; m <= 4; ++m) EXPECT_EQ(p2[m], want2[m]);
}

TEST(Catalan, TraceIdentityExact)
{
    for (int c : {1, 2, 24}) {
        auto t = trace_identity(heisenberg_dimensions(c, 10), 10);
        for (int n = 0; n <= 10; ++n) EXPECT_EQ(t.difference[n], 0) << "c=" << c << " n=" << n;
    }
    auto t1 = trace_identity(heisenberg_dimensions(1, 1), 1);
    EXPECT_EQ(t1.from_quasi_primaries[1], 1);
}

TEST(Fock, PartitionCounts)
{
    std::vector<int> want{1, 1, 2, 3, 5, 7, 11, 15};
    for (int n = 1; n <= 7; ++n) {
        int count = 0;
        for_each_partition(n, [&](const Multiplicities& e) {
            EXPECT_EQ(weight(e), n);
            ++count;
        });
        EXPECT_EQ(count, want[n]);
    }
}

TEST(Fock, LizNorm)
{
    EXPECT_EQ(liz_norm(mult({1})), -1);
    EXPECT_EQ(liz_norm(mult({})), 1);
    EXPECT_EQ(liz_norm(mult({2, 1})), -4);
    EXPECT_EQ(liz_norm(mult({0, 0, 3})), -27.0 * 6);
}

TEST(Fock, MatchingCount)
{
    for (int n = 0; n <= 12; n += 2) {
        cplx c = sum_over_matchings(n, [](int, int) { return cplx(1.0); });
        EXPECT_EQ(c.real(), double(double_factorial_odd(n - 1))) << n;
    }
    EXPECT_EQ(sum_over_matchings(5, [](int, int) { return cplx(1.0); }), cplx(0.0));
}

class FockTest : public ::testing::Test {
protected:
    Torus t{cplx(0, 1.2)};
    cplx w{0.7, 0.4};
};

TEST_F(FockTest, SingleLabelWeights)
{
    EXPECT_LT(rel_err(two_point_weight(t, w, mult({1})), t.P(2, w)), 1e-13);
    // D(2,2,w) = (-1)^3 3!/(1! 1!) P_4(w)
    EXPECT_LT(rel_err(two_point_weight(t, w, mult({0, 1})), -6.0 * t.P(4, w)), 1e-13);
    // {1^2}: C(1,1)^2 + 2 D(1,1,w) D(1,1,-w)
    cplx c11 = t.C(1, 1), d11 = t.D(1, 1, w);
    EXPECT_LT(rel_err(two_point_weight(t, w, mult({2})), c11 * c11 + 2.0 * d11 * d11), 1e-13);
}

TEST_F(FockTest, OracleLimits)
{
    EXPECT_THROW(two_point_weight(t, w, mult({8})), domain_error);
    EXPECT_THROW(z2_series_oracle(t, w, 8), domain_error);
}

TEST_F(FockTest, OracleLowOrders)
{
    auto c = z2_series_oracle(t, w, 2);
    EXPECT_EQ(c[0], cplx(1.0));
    EXPECT_LT(rel_err(c[1], -t.P(2, w)), 1e-13);
}

TEST_F(FockTest, EvenInW)
{
    auto a = z2_series_oracle(t, w, 5), b = z2_series_oracle(t, -w, 5);
    for (int n = 0; n <= 5; ++n) EXPECT_LT(rel_err(a[n], b[n], 1e-12), 1e-12) << n;
}

TEST_F(FockTest, MatchesDeterminantSeries)
{
    auto oracle = z2_series_oracle(t, w, 4);
    auto det = z2_rho_series(t.tau(), w, 4);
    for (int n = 0; n <= 4; ++n) EXPECT_LT(rel_err(det[n], oracle[n]), 1e-9) << n;
}
