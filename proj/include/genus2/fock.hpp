#pragma once

#include <functional>
#include <vector>

#include "elliptic.hpp"

namespace genus2 {

// A partition lambda = {1^{e_1} 2^{e_2} ...} stored as multiplicities e[i-1] = e_i.
using Multiplicities = std::vector<int>;

inline int weight(const Multiplicities& e)
{
    int n = 0;
    for (std::size_t i = 0; i < e.size(); ++i) n += int(i + 1) * e[i];
    return n;
}

inline void for_each_partition(int n, const std::function<void(const Multiplicities&)>& f)
{
    Multiplicities e(std::max(n, 1), 0);
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            f(e);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            ++e[part - 1];
            rec(remaining - part, part);
            --e[part - 1];
        }
    };
    rec(n, n);
}

// LiZ norm of prod a(-i)^{e_i} 1: prod (-i)^{e_i} e_i!
inline double liz_norm(const Multiplicities& e)
{
    double v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int j = 1; j <= e[i]; ++j) v *= -double(i + 1) * j;
    return v;
}

inline constexpr int fock_oracle_max_labels = 14;
inline constexpr int fock_series_max_order = 7;

// Sum over perfect matchings of {0..n-1} of the product of weight(i, j), i < j.
template <class W>
cplx sum_over_matchings(int n, W&& weight)
{
    if (n % 2) return 0.0;
    std::vector<bool> used(n, false);
    std::function<cplx()> rec = [&]() -> cplx {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i]) {
                first = i;
                break;
            }
        if (first < 0) return 1.0;
        used[first] = true;
        cplx total = 0;
        for (int j = first + 1; j < n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            total += weight(first, j) * rec();
            used[j] = false;
        }
        used[first] = false;
        return total;
    };
    return rec();
}

// E(lambda): sum over fixed-point-free involutions of two copies of the label
// multiset; a pair inside one copy weighs C(r,s), across copies D(r,s,w_ab)
// with w_12 = w, w_21 = -w.
inline cplx two_point_weight(const Torus& t, cplx w, const Multiplicities& e)
{
    struct Item {
        int copy;
        int label;
    };
    std::vector<Item> items;
    for (int copy = 1; copy <= 2; ++copy)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int j = 0; j < e[i]; ++j) items.push_back({copy, int(i + 1)});
    int n = static_cast<int>(items.size());
    if (n > fock_oracle_max_labels) throw domain_error("oracle too large");

    auto xi = [&](const Item& x, const Item& y) -> cplx {
        if (x.copy == y.copy) return t.C(x.label, y.label);
        return t.D(x.label, y.label, x.copy == 1 ? w : -w);
    };

    return sum_over_matchings(n, [&](int i, int j) { return xi(items[i], items[j]); });
}

// Coefficients of rho^0..rho^N of Z^(2)/Z^(1) from the Fock-space sum.
inline std::vector<cplx> z2_series_oracle(const Torus& t, cplx w, int N)
{
    if (N > fock_series_max_order) throw domain_error("oracle too large");
    std::vector<cplx> c(N + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= N; ++n)
        for_each_partition(n, [&](const Multiplicities& e) { c[n] += two_point_weight(t, w, e) / liz_norm(e); });
    return c;
}

} // namespace genus2
