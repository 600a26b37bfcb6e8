// A short walk through the library: reduce a point, evaluate j, recover the
// same curve from its Legendre parameter, and act on the universal family.

#include <iostream>

#include "ellmod/ellmod.hpp"

using namespace ellmod;

int main() {
    const HalfPlanePoint tau(2.3, 0.1);
    const Reduction red = reduce(tau);
    std::cout << "tau          = " << tau.value() << "\n"
              << "reduced      = " << red.point.value() << " via " << red.matrix << "\n"
              << "j(tau)       = " << j_invariant(tau) << "\n"
              << "|Aut|        = " << stabilizer(tau).order << "\n";

    // Legendre curve y^2 = x(x-1)(x-u): periods, then the reduced period ratio.
    const LegendreParameter u(cplx(0.3, 0.4));
    const HalfPlanePoint t = tau_from_u(u);
    std::cout << "\nu            = " << u.value() << "\n"
              << "tau(u)       = " << t.value() << "\n"
              << "256 lambda^  = " << j_from_u(u) << "\n"
              << "j(tau(u))    = " << j_invariant(t) << "\n";

    const FramedLattice l = FramedLattice::standard(t);
    const cplx z(0.31, 0.17);
    const WpValue w = wp_with_derivative(l, z);
    const auto inv = weierstrass_invariants(t);
    std::cout << "\nwp(z)        = " << w.value << "\n"
              << "ODE residual = "
              << std::abs(w.derivative * w.derivative - (4.0 * w.value * w.value * w.value - inv.g2 * w.value - inv.g3))
              << "\n";

    const TotalSpacePoint p{tau, cplx(1.5, 0.05)};
    const auto [q, h] = canonical_rep(p);
    std::cout << "\ncanonical (tau, z) = (" << q.tau.value() << ", " << q.z << ") via " << h << "\n";
}
