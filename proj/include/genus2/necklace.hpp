#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sewing.hpp"

namespace genus2 {

// Graph-sum evaluation of the sewing quantities. Nodes are labels (k, a) with
// k <= max_label; an edge (k,a) -> (l,b) carries R_ab(k,l).
struct NecklaceConfig {
    int max_cycle_len = 8;
    int max_necklace_len = 8; // number of edges between the two end nodes
    int max_label = 4;
};

namespace detail {

inline void dfs_paths(const Mat& R, int n_nodes, const RowVec& end, int node, cplx acc, int edges_left,
                      cplx& total)
{
    total += acc * end(node);
    if (edges_left == 0) return;
    for (int next = 0; next < n_nodes; ++next) {
        cplx e = R(node, next);
        if (e == cplx{}) continue;
        dfs_paths(R, n_nodes, end, next, acc * e, edges_left - 1, total);
    }
}

} // namespace detail

// Sum over oriented necklaces with end-node weights `start` and `end`, enumerated
// one labelled path at a time, up to `max_edges` interior edges.
inline cplx necklace_sum(const SewingSystem& s, const RowVec& start, const RowVec& end, int max_edges,
                         int max_label)
{
    if (max_label > s.K()) throw std::invalid_argument("max_label exceeds the sewing truncation");
    int n = 2 * max_label;
    cplx total = 0;
    for (int i = 0; i < n; ++i) {
        if (start(i) == cplx{}) continue;
        detail::dfs_paths(s.R(), n, end, i, start(i), max_edges, total);
    }
    return total;
}

inline RowVec unit_label_one(int dim)
{
    RowVec e = RowVec::Zero(dim);
    e(0) = e(1) = 1.0;
    return e;
}

struct GraphQuantities {
    cplx zeta_11;   // zeta(1;1)
    cplx zeta_d1;   // zeta(d;1)
    cplx zeta_ddbar;
};

inline GraphQuantities graph_quantities(const SewingSystem& s, const NecklaceConfig& cfg)
{
    int L = cfg.max_necklace_len, K = cfg.max_label;
    RowVec e1 = unit_label_one(s.dim());
    return {necklace_sum(s, e1, e1, L, K), necklace_sum(s, s.d(), e1, L, K),
            necklace_sum(s, s.d(), s.dbar(), L, K)};
}

inline Mat2 omega_from_graphs(const SewingSystem& s, const NecklaceConfig& cfg)
{
    GraphQuantities g = graph_quantities(s, cfg);
    const SewingPoint& p = s.point();
    Mat2 o;
    o(0, 0) = (two_pi_i * p.tau - p.rho * g.zeta_11) / two_pi_i;
    o(0, 1) = o(1, 0) = (p.w - s.sqrt_rho() * g.zeta_d1) / two_pi_i;
    o(1, 1) = (s.log_term() - g.zeta_ddbar) / two_pi_i;
    return o;
}

// zeta(x;y): the direct edge P2(x-y) plus necklaces x -> (k,a) ... (l,b) -> y.
inline cplx omega2_from_graphs(const SewingSystem& s, cplx x, cplx y, const NecklaceConfig& cfg)
{
    return s.torus().P(2, x - y) - necklace_sum(s, s.a_form(x), s.a_form_bar(y), cfg.max_necklace_len,
                                                cfg.max_label);
}

inline cplx nu1_from_graphs(const SewingSystem& s, cplx x, const NecklaceConfig& cfg)
{
    return 1.0 - s.sqrt_rho() * necklace_sum(s, s.a_form(x), unit_label_one(s.dim()), cfg.max_necklace_len,
                                             cfg.max_label);
}

inline cplx nu2_from_graphs(const SewingSystem& s, cplx x, const NecklaceConfig& cfg)
{
    const Torus& t = s.torus();
    return t.P(1, x - s.point().w) - t.P(1, x) -
           necklace_sum(s, s.a_form(x), s.dbar(), cfg.max_necklace_len, cfg.max_label);
}

// Necklaces (rotation classes of words) over an alphabet of size `alphabet`, of
// length exactly n, in canonical (lexicographically least) form, via the
// Fredricksen-Kessler-Maiorana recursion. The callback gets the word and its period.
inline void for_each_necklace(int alphabet, int n, const std::function<void(const std::vector<int>&, int)>& f)
{
    std::vector<int> a(n + 1, 0);
    std::vector<int> word(n);
    std::function<void(int, int)> gen = [&](int t, int p) {
        if (t > n) {
            if (n % p == 0) {
                for (int i = 0; i < n; ++i) word[i] = a[i + 1];
                f(word, p);
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p);
        for (int j = a[t - p] + 1; j < alphabet; ++j) {
            a[t] = j;
            gen(t + 1, t);
        }
    };
    gen(1, 1);
}

inline cplx cycle_weight(const Mat& R, const std::vector<int>& word)
{
    cplx z = 1.0;
    std::size_t n = word.size();
    for (std::size_t i = 0; i < n; ++i) z *= R(word[i], word[(i + 1) % n]);
    return z;
}

// sum over oriented cycles of length n of zeta(M)/|Aut M|; equals Tr R^n / n.
inline cplx cycle_sum(const SewingSystem& s, int n, int max_label)
{
    cplx total = 0;
    for_each_necklace(2 * max_label, n, [&](const std::vector<int>& w, int period) {
        total += cycle_weight(s.R(), w) * double(period) / double(n);
    });
    return total;
}

struct CycleProduct {
    cplx value;           // prod over rotationless cycles of (1 - zeta)^{-1/2}
    long long n_cycles = 0;
    double tail_bound = 0;
};

inline CycleProduct rotationless_cycle_product(const SewingSystem& s, const NecklaceConfig& cfg)
{
    cplx log_sum = 0;
    long long count = 0;
    for (int n = 1; n <= cfg.max_cycle_len; ++n)
        for_each_necklace(2 * cfg.max_label, n, [&](const std::vector<int>& w, int period) {
            if (period != n) return;
            log_sum += std::log(1.0 - cycle_weight(s.R(), w));
            ++count;
        });
    CycleProduct out;
    out.value = std::exp(-0.5 * log_sum);
    out.n_cycles = count;
    // dropped cycles: (1/2) sum_{n > L} |Tr R^n| / n <= (1/2) dim r^{L+1} / ((L+1)(1-r))
    double r = s.R().topLeftCorner(2 * cfg.max_label, 2 * cfg.max_label).cwiseAbs().rowwise().sum().maxCoeff();
    int L = cfg.max_cycle_len;
    if (r < 1)
        out.tail_bound = std::abs(out.value) *
                         std::expm1(0.5 * 2 * cfg.max_label * std::pow(r, L + 1) / ((L + 1) * (1 - r)));
    else
        out.tail_bound = INFINITY;
    return out;
}

// Geometric bound on the necklace tail beyond `max_edges`, for end weights u, v.
inline double necklace_tail_bound(const SewingSystem& s, const RowVec& u, const RowVec& v, int max_edges,
                                  int max_label)
{
    int n = 2 * max_label;
    double r = s.R().topLeftCorner(n, n).cwiseAbs().rowwise().sum().maxCoeff();
    if (r >= 1) return INFINITY;
    double uu = u.head(n).cwiseAbs().sum(), vv = v.head(n).cwiseAbs().maxCoeff();
    return uu * vv * std::pow(r, max_edges + 1) / (1 - r);
}

} // namespace genus2
