#pragma once

#include <vector>

#include "complex.hpp"

namespace genus2 {

// Taylor coefficients c_0..c_{n_coeffs-1} of f about 0 from samples on |z| = radius
// (discrete Cauchy integral). Aliasing error is of order c_{n+points} radius^points.
template <class F>
std::vector<cplx> taylor_coefficients(F&& f, double radius, int points, int n_coeffs)
{
    std::vector<cplx> samples(points);
    for (int j = 0; j < points; ++j) samples[j] = f(radius * std::exp(two_pi_i * (double(j) / points)));
    std::vector<cplx> c(n_coeffs);
    for (int n = 0; n < n_coeffs; ++n) {
        cplx acc = 0;
        for (int j = 0; j < points; ++j) acc += samples[j] * std::exp(-two_pi_i * (double(n) * j / points));
        c[n] = acc / (double(points) * std::pow(radius, n));
    }
    return c;
}

} // namespace genus2
