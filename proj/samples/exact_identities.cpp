#include <iostream>

#include "genus2/genus2.hpp"

using namespace genus2;

// Exact rational coefficients of the Catalan series and the rank-one trace identity.
int main()
{
    std::cout << "catalan:";
    auto c = catalan_series(10);
    for (int n = 0; n <= 10; ++n) std::cout << " " << rational_string(c[n]);
    std::cout << "\ntrace identity (rank 1):";
    auto t = trace_identity(heisenberg_dimensions(1, 10), 10);
    for (int n = 0; n <= 10; ++n) std::cout << " " << rational_string(t.from_quasi_primaries[n]);
    std::cout << "\n";
}
