#pragma once

#include <cmath>
#include <mutex>
#include <vector>

#include "complex.hpp"
#include "series.hpp"

namespace genus2 {

// ---------------------------------------------------------------------------
// Exact coefficients

namespace detail {
inline std::vector<Rational>& bernoulli_cache()
{
    static std::vector<Rational> table{Rational(1)};
    return table;
}
inline std::mutex& bernoulli_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace detail

// B_n with B_1 = -1/2.
inline Rational bernoulli(int n)
{
    std::lock_guard<std::mutex> lock(detail::bernoulli_mutex());
    auto& b = detail::bernoulli_cache();
    for (int m = static_cast<int>(b.size()); m <= n; ++m) {
        Rational acc = 0;
        for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
        b.push_back(-acc / (m + 1));
    }
    return b[n];
}

inline BigInt factorial(int n)
{
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt divisor_sigma(int p, int n)
{
    BigInt s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += boost::multiprecision::pow(BigInt(d), p);
    return s;
}

// B_n / n! in double precision.
inline double bernoulli_over_factorial(int n)
{
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2) return 0.0;
    if (n <= 60) return Rational(bernoulli(n) / Rational(factorial(n))).convert_to<double>();
    double zeta = 1.0;
    for (int m = 2; m < 40; ++m) {
        double t = std::pow(double(m), -n);
        zeta += t;
        if (t < 1e-20) break;
    }
    double sign = (n / 2) % 2 ? 1.0 : -1.0;
    return sign * 2.0 * zeta * std::pow(2.0 * pi, -n);
}

// E_k(q) = -B_k/k! + 2/(k-1)! sum sigma_{k-1}(n) q^n, truncated at O(q^q_order).
template <class T>
Series<T> eisenstein_series(int k, int q_order)
{
    if (k < 1) throw std::invalid_argument("Eisenstein weight must be positive");
    Series<T> s(0, q_order);
    if (k % 2) return s;
    s.at(0) = coeff_traits<T>::from_rational(-bernoulli(k) / Rational(factorial(k)));
    Rational scale = Rational(2) / Rational(factorial(k - 1));
    for (int n = 1; n < q_order; ++n)
        s.at(n) = coeff_traits<T>::from_rational(scale * Rational(divisor_sigma(k - 1, n)));
    return s;
}

// prod_{n>=1} (1 - q^n); eta = q^{1/24} times this.
template <class T>
Series<T> euler_product_series(int q_order)
{
    Series<T> s = Series<T>::constant(T(1), q_order);
    for (int n = 1; n < q_order; ++n) {
        Series<T> f = Series<T>::constant(T(1), q_order);
        f.at(n) = T(-1);
        s = s * f;
    }
    return s;
}

// Two-variable expansion: coefficient of z^{low + i} is a q-series.
template <class T>
struct ZSeries {
    int low = 0;
    std::vector<Series<T>> coeff;
    int prec() const { return low + static_cast<int>(coeff.size()); }
    const Series<T>& at(int e) const { return coeff.at(e - low); }
};

// P_k for k >= 1 as a z-expansion with q-series coefficients, through O(z^{z_order}).
template <class T>
ZSeries<T> weierstrass_series(int k, int z_order, int q_order)
{
    if (k < 1) throw std::invalid_argument("weierstrass_series needs k >= 1; P_0 has a log term");
    ZSeries<T> out;
    out.low = -k;
    for (int e = -k; e < z_order; ++e) out.coeff.emplace_back(0, q_order);
    out.coeff[0].at(0) = T(1);
    for (int m = std::max(k, 2); m - k < z_order; ++m) {
        if (m % 2) continue;
        Rational c = Rational(binomial(m - 1, k - 1)) * (k % 2 ? -1 : 1);
        out.coeff[m] = out.coeff[m] + coeff_traits<T>::from_rational(c) * eisenstein_series<T>(m, q_order);
    }
    return out;
}

// Expansion coefficients of C(k,l) = (-1)^{k+1} (k+l-1)!/((k-1)!(l-1)!) E_{k+l}.
inline Rational sewing_binomial(int k, int l)
{
    Rational c(factorial(k + l - 1), factorial(k - 1) * factorial(l - 1));
    return k % 2 ? c : -c;
}

template <class T>
Series<T> C_series(int k, int l, int q_order)
{
    if (l == 0) {
        Rational sign = k % 2 ? 1 : -1;
        return coeff_traits<T>::from_rational(sign) * eisenstein_series<T>(k, q_order);
    }
    return coeff_traits<T>::from_rational(sewing_binomial(k, l)) * eisenstein_series<T>(k + l, q_order);
}

// ---------------------------------------------------------------------------
// Numeric evaluation on the torus with lattice 2 pi i (Z tau + Z)

struct BranchValue {
    cplx value;
    bool continued = false; // true when evaluated outside the z-series disk
};

class Torus {
public:
    explicit Torus(cplx tau, int q_order = 20) : tau_(tau), q_order_(q_order)
    {
        if (!(tau.imag() > 0)) throw domain_error("tau not in upper half plane");
        q_ = std::exp(two_pi_i * tau);
        log_abs_q_ = -2.0 * pi * tau.imag();
        D_ = compute_min_distance();
    }

    cplx tau() const { return tau_; }
    cplx q() const { return q_; }
    int q_order() const { return q_order_; }

    // min over nonzero lattice points of |lambda|.
    double min_distance() const { return D_; }
    double series_radius() const { return 0.5 * D_; }

    cplx E(int k) const
    {
        if (k < 1) throw std::invalid_argument("Eisenstein weight must be positive");
        if (k % 2) return 0.0;
        if (k >= static_cast<int>(E_.size())) {
            E_.resize(k + 1);
            have_E_.resize(k + 1, false);
        }
        if (!have_E_[k]) {
            E_[k] = eisenstein_numeric(k);
            have_E_[k] = true;
        }
        return E_[k];
    }

    struct Reduced {
        cplx z;
        int m = 0; // coefficient of 2 pi i tau
        int n = 0; // coefficient of 2 pi i
    };

    // z = z0 + 2 pi i (m tau + n) with z0 of (nearly) minimal modulus.
    Reduced reduce(cplx z) const
    {
        Reduced r = reduce_parallelogram(z);
        Reduced best = r;
        for (int dm = -1; dm <= 1; ++dm)
            for (int dn = -1; dn <= 1; ++dn) {
                cplx c = r.z - two_pi_i * (double(dm) * tau_ + double(dn));
                if (std::abs(c) < std::abs(best.z)) best = {c, r.m + dm, r.n + dn};
            }
        return best;
    }

    // P_k(tau, z) for k >= 1.
    cplx P(int k, cplx z) const
    {
        if (k < 1) throw std::invalid_argument("use P0 for k = 0");
        Reduced r = reduce(z);
        if (std::abs(r.z) < 1e-6 * D_) throw domain_error("z within singular tolerance of a lattice point");
        cplx v = std::abs(r.z) <= series_radius() ? P_laurent(k, r.z) : P_lambert(k, r.z);
        if (k == 1) v -= double(r.m);
        return v;
    }

    // Laurent expansion about z = 0; valid for |z| < min_distance().
    cplx P_laurent(int k, cplx z) const
    {
        cplx zk = std::pow(z, -k);
        cplx sum = zk;
        double rr = std::abs(z) / D_;
        int m_min = std::max(k, 2) + 24;
        double m_peak = rr < 1 ? k / (1.0 - rr) + 4 : 1e9;
        cplx zp = std::pow(z, std::max(k, 2) - k);
        int small = 0;
        for (int m = std::max(k, 2); m < 6000; ++m, zp *= z) {
            if (m % 2) continue;
            cplx term = binomial_d(m - 1, k - 1) * E(m) * zp;
            sum += (k % 2 ? -term : term);
            if (m >= m_min && m > m_peak && std::abs(term) <= 1e-18 * std::abs(sum)) {
                if (++small >= 2) return sum;
            } else {
                small = 0;
            }
        }
        throw domain_error("z-series for P_k did not converge");
    }

    // Logarithmic derivative of the theta product, differentiated k-1 times.
    cplx P_lambert(int k, cplx z) const
    {
        Reduced r = reduce_parallelogram(z);
        int j = k - 1;
        cplx z0 = r.z;
        cplx u = std::exp(z0);
        cplx y = z0 - two_pi_i * std::round(z0.imag() / (2.0 * pi));
        cplx val = -polylog_neg_exp(j, y);
        cplx qn = 1.0;
        double sign = j % 2 ? -1.0 : 1.0;
        for (int n = 1; n < 100000; ++n) {
            qn *= q_;
            cplx t = -polylog_neg(j, qn * u) + sign * polylog_neg(j, qn / u);
            val += t;
            if (std::abs(t) <= 1e-18 * std::abs(val) && std::abs(qn) * std::exp(std::abs(z0.real())) < 1e-3)
                break;
        }
        if (j == 0) val += -0.5 - double(r.m);
        double fact = std::exp(std::lgamma(k));
        return (j % 2 ? -val : val) / fact;
    }

    // P_0 = -log z + sum E_k z^k / k, principal log; continued via -log K outside the disk.
    BranchValue P0(cplx z) const
    {
        if (std::abs(z) < 1e-6 * D_) throw domain_error("z within singular tolerance of a lattice point");
        if (std::abs(z) <= series_radius()) return {-std::log(z) + log_prime_correction(z), false};
        return {-std::log(prime_form_product(z)), true};
    }

    // K(tau, z) = exp(-P_0).
    BranchValue prime_form(cplx z) const
    {
        if (std::abs(z) <= series_radius()) return {z * std::exp(-log_prime_correction(z)), false};
        return {prime_form_product(z), true};
    }

    // 2 sinh(z/2) prod (1 - q^n e^z)(1 - q^n e^{-z}) / (1 - q^n)^2, valid for all z.
    cplx prime_form_product(cplx z) const
    {
        cplx v = 2.0 * std::sinh(0.5 * z);
        cplx eu = std::exp(z), ed = std::exp(-z), qn = 1.0;
        for (int n = 1; n < 100000; ++n) {
            qn *= q_;
            cplx a = qn * eu, b = qn * ed;
            v *= (1.0 - a) * (1.0 - b) / ((1.0 - qn) * (1.0 - qn));
            if (std::abs(a) + std::abs(b) < 1e-18) return v;
        }
        throw domain_error("prime form product did not converge");
    }

    cplx eta() const
    {
        cplx v = std::exp(two_pi_i * tau_ / 24.0);
        cplx qn = 1.0;
        for (int n = 1; n < 1000000; ++n) {
            qn *= q_;
            v *= 1.0 - qn;
            if (std::abs(qn) < 1e-18) return v;
        }
        throw domain_error("eta product did not converge");
    }

    cplx C(int k, int l) const
    {
        if (l == 0) return (k % 2 ? 1.0 : -1.0) * E(k);
        return sewing_coefficient(k, l) * E(k + l);
    }

    cplx D(int k, int l, cplx z) const
    {
        if (l == 0) return (k % 2 ? 1.0 : -1.0) * P(k, z);
        return sewing_coefficient(k, l) * P(k + l, z);
    }

    // (-1)^{k+1} (k+l-1)! / ((k-1)! (l-1)!)
    static double sewing_coefficient(int k, int l)
    {
        double c = l * binomial_d(k + l - 1, l);
        return k % 2 ? c : -c;
    }

private:
    Reduced reduce_parallelogram(cplx z) const
    {
        cplx x = z / two_pi_i;
        double a = x.imag() / tau_.imag();
        double b = x.real() - a * tau_.real();
        int m = static_cast<int>(std::lround(a)), n = static_cast<int>(std::lround(b));
        return {z - two_pi_i * (double(m) * tau_ + double(n)), m, n};
    }

    double compute_min_distance() const
    {
        double best = 2.0 * pi;
        int N = static_cast<int>(std::ceil(1.0 / tau_.imag())) + 1;
        for (int n = -N; n <= N; ++n) {
            if (n == 0) continue;
            double centre = -n * tau_.real();
            for (int m = static_cast<int>(std::floor(centre)) - 1; m <= static_cast<int>(std::ceil(centre)) + 1; ++m)
                best = std::min(best, 2.0 * pi * std::abs(double(m) + double(n) * tau_));
        }
        return best;
    }

    cplx eisenstein_numeric(int k) const
    {
        cplx constant = -bernoulli_over_factorial(k);
        cplx sum = 0.0;
        double lg = std::lgamma(double(k));
        double arg_q = std::arg(q_);
        double peak = (k - 1) / std::max(-log_abs_q_, 1e-300);
        cplx qn = 1.0;
        for (int n = 1; n < 1000000; ++n) {
            qn *= q_;
            double logmag = (k - 1) * std::log(double(n)) - lg + n * log_abs_q_;
            cplx term = 2.0 * std::exp(logmag) * std::polar(1.0, n * arg_q) / (1.0 - qn);
            sum += term;
            if (n >= q_order_ && n > peak && std::abs(term) <= 1e-18 * (std::abs(sum) + std::abs(constant)))
                return constant + sum;
        }
        throw domain_error("Eisenstein series did not converge");
    }

    cplx log_prime_correction(cplx z) const
    {
        // sum_{k>=2} E_k z^k / k
        cplx sum = 0.0, zp = z * z;
        int small = 0;
        for (int k = 2; k < 6000; k += 2, zp *= z * z) {
            cplx t = E(k) * zp / double(k);
            sum += t;
            if (k > 24 && std::abs(t) <= 1e-18 * std::max(std::abs(sum), 1e-300)) {
                if (++small >= 2) return sum;
            } else {
                small = 0;
            }
        }
        throw domain_error("P_0 series did not converge");
    }

    // Li_{-j}(x) = sum_{m>=1} m^j x^m for |x| < 1.
    static cplx polylog_neg(int j, cplx x)
    {
        double ax = std::abs(x);
        if (ax >= 1.0) throw domain_error("polylog argument outside unit disk");
        if (ax == 0.0) return 0.0;
        double peak = j / -std::log(ax);
        cplx sum = 0.0, xm = 1.0;
        for (int m = 1; m < 1000000; ++m) {
            xm *= x;
            cplx t = std::pow(double(m), j) * xm;
            sum += t;
            if (m > peak && std::abs(t) <= 1e-19 * std::abs(sum)) return sum;
            if (std::abs(xm) == 0.0) return sum;
        }
        throw domain_error("polylog series did not converge");
    }

    // Li_{-j}(e^y) with |Im y| <= pi.
    static cplx polylog_neg_exp(int j, cplx y)
    {
        if (std::abs(y) <= 4.5) {
            // j! (-y)^{-j-1} + sum_k zeta(-j-k) y^k / k!
            cplx sum = std::exp(std::lgamma(j + 1.0)) * std::pow(-y, -j - 1);
            cplx yk = 1.0;
            int small = 0;
            for (int k = 0; k < 2000; ++k, yk *= y) {
                int n = j + k;
                if (n >= 2 && n % 2 == 0) continue;
                double fall = 1.0;
                for (int i = k + 1; i <= n; ++i) fall *= i;
                double zeta = (n % 2 ? -1.0 : 1.0) * bernoulli_over_factorial(n + 1) * fall;
                cplx t = zeta * yk;
                sum += t;
                if (k > j + 8 && std::abs(t) <= 1e-19 * std::abs(sum)) {
                    if (++small >= 2) return sum;
                } else {
                    small = 0;
                }
            }
            throw domain_error("polylog expansion did not converge");
        }
        if (y.real() < 0) return polylog_neg(j, std::exp(y));
        if (j == 0) return -1.0 - polylog_neg(0, std::exp(-y));
        return (j % 2 ? 1.0 : -1.0) * polylog_neg(j, std::exp(-y));
    }

    cplx tau_;
    cplx q_;
    double log_abs_q_;
    int q_order_;
    double D_;
    mutable std::vector<cplx> E_;
    mutable std::vector<bool> have_E_;
};

} // namespace genus2
