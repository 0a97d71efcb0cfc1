#include <iostream>

#include "genus2/genus2.hpp"

using namespace genus2;

// Period matrix and partition function along a short rho ray.
int main()
{
    Torus torus(cplx(0, 1.2));
    cplx w(0.7, 0.4);
    for (double r : {0.002, 0.005, 0.01, 0.02}) {
        SewingPoint p{torus.tau(), w, cplx(r, 0)};
        PeriodMatrix pm = period_matrix(p);
        std::printf("rho=%.3f  Omega11=%+.10f%+.10fi  Omega12=%+.10f%+.10fi  Omega22=%+.10f%+.10fi  radius=%.3e\n", r,
                    pm.omega(0, 0).real(), pm.omega(0, 0).imag(), pm.omega(0, 1).real(), pm.omega(0, 1).imag(),
                    pm.omega(1, 1).real(), pm.omega(1, 1).imag(), pm.spectral_radius);
    }
}
