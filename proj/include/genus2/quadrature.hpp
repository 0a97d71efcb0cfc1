#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "complex.hpp"

namespace genus2 {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Newton iteration on P_n with the Chebyshev guess.
inline GaussRule gauss_legendre(int n)
{
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

inline const GaussRule& gauss64()
{
    static const GaussRule rule = gauss_legendre(64);
    return rule;
}

// Integral of f(x(t)) x'(t) dt over t in [0,1], split into equal segments.
template <class F, class Path, class DPath>
cplx contour_integral(F&& f, Path&& x, DPath&& dx, int segments = 4)
{
    const GaussRule& g = gauss64();
    cplx total = 0;
    double h = 1.0 / segments;
    for (int s = 0; s < segments; ++s) {
        double mid = (s + 0.5) * h;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            double t = mid + 0.5 * h * g.nodes[i];
            total += 0.5 * h * g.weights[i] * f(x(t)) * dx(t);
        }
    }
    return total;
}

} // namespace genus2
