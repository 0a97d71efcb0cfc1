#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "complex.hpp"

namespace genus2 {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r)
{
    BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline BigInt binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double binomial_d(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficient-type hooks used by Series<T>. The exact instantiation is Rational,
// the numeric one is cplx.
template <class T>
struct coeff_traits;

template <>
struct coeff_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& r) { return r; }
    static bool is_zero(const Rational& r) { return r == 0; }
    static Rational exp(const Rational& r)
    {
        if (r != 0) throw std::domain_error("exp of nonzero rational constant");
        return 1;
    }
    static Rational log(const Rational& r)
    {
        if (r != 1) throw std::domain_error("log of rational constant other than 1");
        return 0;
    }
    static Rational pow(const Rational& r, const Rational& a)
    {
        if (r != 1) throw std::domain_error("rational power of constant other than 1");
        (void)a;
        return 1;
    }
};

template <>
struct coeff_traits<cplx> {
    static constexpr bool exact = false;
    static cplx from_rational(const Rational& r) { return {r.convert_to<double>(), 0.0}; }
    static bool is_zero(const cplx& z) { return z == cplx{}; }
    static cplx exp(const cplx& z) { return std::exp(z); }
    static cplx log(const cplx& z) { return std::log(z); }
    static cplx pow(const cplx& z, const cplx& a) { return std::pow(z, a); }
};

// Truncated Laurent series sum_{e=low}^{prec-1} c_e x^e + O(x^prec).
template <class T>
class Series {
public:
    Series() = default;
    Series(int low, int prec) : low_(low), prec_(prec), c_(std::max(prec - low, 0), T(0)) {}

    static Series constant(const T& v, int prec)
    {
        Series s(0, prec);
        if (prec > 0) s.c_[0] = v;
        return s;
    }
    static Series variable(int prec)
    {
        Series s(0, prec);
        if (prec > 1) s.c_[1] = T(1);
        return s;
    }
    static Series from_coeffs(std::vector<T> c, int low = 0)
    {
        Series s;
        s.low_ = low;
        s.prec_ = low + static_cast<int>(c.size());
        s.c_ = std::move(c);
        return s;
    }

    int low() const { return low_; }
    int prec() const { return prec_; }

    T operator[](int e) const
    {
        if (e >= prec_) throw std::out_of_range("coefficient beyond truncation order");
        if (e < low_) return T(0);
        return c_[e - low_];
    }
    T& at(int e)
    {
        if (e < low_ || e >= prec_) throw std::out_of_range("coefficient outside series window");
        return c_[e - low_];
    }

    // Lowest exponent with a nonzero coefficient, or prec() if none.
    int valuation() const
    {
        for (int e = low_; e < prec_; ++e)
            if (!coeff_traits<T>::is_zero(c_[e - low_])) return e;
        return prec_;
    }

    Series truncate(int prec) const
    {
        Series s(low_, std::min(prec, prec_));
        for (int e = low_; e < s.prec_; ++e) s.c_[e - low_] = c_[e - low_];
        return s;
    }

    Series operator-() const
    {
        Series s = *this;
        for (auto& v : s.c_) v = -v;
        return s;
    }

    friend Series operator+(const Series& a, const Series& b)
    {
        Series s(std::min(a.low_, b.low_), std::min(a.prec_, b.prec_));
        for (int e = s.low_; e < s.prec_; ++e) s.c_[e - s.low_] = a.get(e) + b.get(e);
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b)
    {
        int low = a.low_ + b.low_;
        int prec = std::min(a.low_ + b.prec_, b.low_ + a.prec_);
        Series s(low, prec);
        for (int i = a.low_; i < a.prec_; ++i) {
            const T& ai = a.c_[i - a.low_];
            if (coeff_traits<T>::is_zero(ai)) continue;
            for (int j = b.low_; i + j < prec && j < b.prec_; ++j)
                s.c_[i + j - low] += ai * b.c_[j - b.low_];
        }
        return s;
    }
    friend Series operator*(const T& k, const Series& a)
    {
        Series s = a;
        for (auto& v : s.c_) v *= k;
        return s;
    }
    friend Series operator*(const Series& a, const T& k) { return k * a; }

    // Multiplicative inverse; the leading nonzero coefficient sets the shift.
    Series inverse() const
    {
        int v = valuation();
        if (v >= prec_) throw std::domain_error("inverse of series with no invertible term");
        int n = prec_ - v;
        std::vector<T> b(n, T(0));
        T lead = c_[v - low_];
        b[0] = T(1) / lead;
        for (int m = 1; m < n; ++m) {
            T acc(0);
            for (int j = 1; j <= m; ++j) acc += c_[v + j - low_] * b[m - j];
            b[m] = -acc / lead;
        }
        return from_coeffs(std::move(b), -v).truncate(-v + n);
    }
    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    Series derivative() const
    {
        Series s(low_ - 1, prec_ - 1);
        for (int e = low_; e < prec_; ++e) s.c_[e - 1 - s.low_] = T(e) * c_[e - low_];
        return s;
    }

    // x d/dx, which keeps the truncation order.
    Series theta() const
    {
        Series s = *this;
        for (int e = low_; e < prec_; ++e) s.c_[e - low_] *= T(e);
        return s;
    }

    Series pow(int n) const
    {
        if (n < 0) return inverse().pow(-n);
        Series result = constant(T(1), prec_ - valuation());
        Series base = *this;
        for (bool first = true; n > 0; n >>= 1) {
            if (n & 1) {
                result = first ? base : result * base;
                first = false;
            }
            if (n > 1) base = base * base;
        }
        return result;
    }

    // exp(f) via f' = (exp f)' / exp f; requires low() >= 0.
    Series exp() const
    {
        require_power_series("exp");
        int n = prec_;
        std::vector<T> g(n, T(0));
        T c0 = get(0);
        g[0] = coeff_traits<T>::exp(c0);
        for (int m = 1; m < n; ++m) {
            T acc(0);
            for (int k = 1; k <= m; ++k) acc += T(k) * get(k) * g[m - k];
            g[m] = acc / T(m);
        }
        return from_coeffs(std::move(g));
    }

    Series log() const
    {
        require_power_series("log");
        T c0 = get(0);
        if (coeff_traits<T>::is_zero(c0)) throw std::domain_error("log of series without constant term");
        Series u = (*this) * (T(1) / c0);
        Series d = u.derivative() * u.inverse();
        Series s(0, prec_);
        s.c_[0] = coeff_traits<T>::log(c0);
        for (int e = 1; e < prec_; ++e) s.c_[e] = d.get(e - 1) / T(e);
        return s;
    }

    // f^a for a generic exponent, via exp(a log f) after pulling out the constant term.
    Series power(const T& a) const
    {
        T c0 = get(0);
        Series u = (*this) * (T(1) / c0);
        Series r = (a * u.log()).exp();
        return coeff_traits<T>::pow(c0, a) * r;
    }

    // f(g(x)) for g with zero constant term.
    Series compose(const Series& g) const
    {
        require_power_series("compose");
        if (g.valuation() < 1) throw std::domain_error("compose needs inner series with positive valuation");
        int prec = std::min(prec_ * g.valuation(), g.prec_);
        Series result = constant(T(0), prec);
        Series gp = constant(T(1), prec);
        for (int e = 0; e < prec_ && e < prec; ++e) {
            if (e > 0) gp = (gp * g).truncate(prec);
            if (gp.valuation() >= prec) break;
            result = result + get(e) * gp;
        }
        return result.truncate(prec);
    }

    template <class X>
    X evaluate(const X& x) const
    {
        X acc(0);
        for (int e = prec_ - 1; e >= std::max(low_, 0); --e) acc = acc * x + X(c_[e - low_]);
        if (low_ < 0) acc += neg_part(x);
        return acc;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        if (a.prec_ != b.prec_) return false;
        for (int e = std::min(a.low_, b.low_); e < a.prec_; ++e)
            if (!(a.get(e) == b.get(e))) return false;
        return true;
    }

private:
    T get(int e) const { return (e < low_ || e >= prec_) ? T(0) : c_[e - low_]; }

    void require_power_series(const char* what) const
    {
        if (valuation() < 0) throw std::domain_error(std::string(what) + " needs a power series");
    }

    template <class X>
    X neg_part(const X& x) const
    {
        X acc(0), inv = X(1) / x, p = inv;
        for (int e = -1; e >= low_; --e, p *= inv) acc += X(c_[e - low_]) * p;
        return acc;
    }

    int low_ = 0;
    int prec_ = 0;
    std::vector<T> c_;
};

} // namespace genus2
