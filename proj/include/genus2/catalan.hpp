#pragma once

#include <vector>

#include "series.hpp"

namespace genus2 {

using QSeries = Series<Rational>;

// f(chi) = sum_{n>=1} (1/n) C(2n, n+1) chi^n through O(chi^{N+1}).
inline QSeries catalan_series(int N)
{
    QSeries f(0, N + 1);
    for (int n = 1; n <= N; ++n) f.at(n) = Rational(binomial(2 * n, n + 1), n);
    return f;
}

// f - chi (1 + f)^2, which vanishes identically.
inline QSeries catalan_defect(int N)
{
    QSeries f = catalan_series(N);
    QSeries one = QSeries::constant(1, N + 1);
    QSeries g = one + f;
    return f - QSeries::variable(N + 1) * g * g;
}

// Closed form for the coefficients of f^m: (m/n) C(2n, n+m) for n >= m.
inline QSeries catalan_power_closed_form(int m, int N)
{
    QSeries s(0, N + 1);
    if (m == 0) {
        s.at(0) = 1;
        return s;
    }
    for (int n = m; n <= N; ++n) s.at(n) = Rational(m) * Rational(binomial(2 * n, n + m)) / n;
    return s;
}

// Coefficient of L(-1)^{n-m} v in sum_r L(-1)^r L(1)^r / (r!)^2 applied to
// L(-1)^{n-m} v for v quasi-primary of weight m, using
// L(1) L(-1)^t v = t (2m + t - 1) L(-1)^{t-1} v.
inline BigInt descendant_trace_coefficient(int n, int m)
{
    int t = n - m;
    Rational total = 0;
    Rational prod = 1;
    Rational fact = 1;
    for (int r = 0; r <= t; ++r) {
        if (r > 0) {
            int j = r - 1;
            prod *= Rational((t - j) * (2 * m + t - j - 1));
            fact *= r;
        }
        total += prod / (fact * fact);
    }
    if (boost::multiprecision::denominator(total) != 1) throw std::logic_error("non-integral trace coefficient");
    return boost::multiprecision::numerator(total);
}

// sum_r C(n-m, r) C(n+m-1, r)
inline BigInt vandermonde_sum(int n, int m)
{
    BigInt s = 0;
    for (int r = 0; r <= n - m; ++r) s += binomial(n - m, r) * binomial(n + m - 1, r);
    return s;
}

// p_m = dim V_m for the rank-c Heisenberg module, m = 0..N.
inline std::vector<BigInt> heisenberg_dimensions(int c, int N)
{
    std::vector<BigInt> p(N + 1, 0);
    p[0] = 1;
    for (int copy = 0; copy < c; ++copy)
        for (int part = 1; part <= N; ++part)
            for (int m = part; m <= N; ++m) p[m] += p[m - part];
    return p;
}

struct TraceIdentity {
    QSeries from_quasi_primaries; // 1 + sum_n chi^n sum_m dim Q_m C(2n-1, n-m)
    QSeries from_catalan;         // sum_m p_m f^m
    QSeries difference;
};

// dim Q_1 = p_1 and dim Q_m = p_m - p_{m-1} for m >= 2 (L(-1) kills only the vacuum).
inline TraceIdentity trace_identity(const std::vector<BigInt>& p, int N)
{
    if (static_cast<int>(p.size()) <= N) throw std::invalid_argument("need p_0..p_N");
    TraceIdentity out;
    QSeries lhs = QSeries::constant(Rational(p[0]), N + 1);
    for (int n = 1; n <= N; ++n) {
        BigInt acc = 0;
        for (int m = 1; m <= n; ++m) {
            BigInt q = m == 1 ? p[1] : p[m] - p[m - 1];
            acc += q * binomial(2 * n - 1, n - m);
        }
        lhs.at(n) = Rational(acc);
    }
    QSeries f = catalan_series(N);
    QSeries rhs = QSeries::constant(Rational(p[0]), N + 1);
    QSeries fm = QSeries::constant(1, N + 1);
    for (int m = 1; m <= N; ++m) {
        fm = (fm * f).truncate(N + 1);
        rhs = rhs + Rational(p[m]) * fm;
    }
    out.from_quasi_primaries = lhs;
    out.from_catalan = rhs;
    out.difference = lhs - rhs;
    return out;
}

} // namespace genus2
