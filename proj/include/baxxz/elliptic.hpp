// Complete elliptic integrals in the parameter convention
//   K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta),
//   E(m) = int_0^{pi/2} sqrt(1 - m sin^2 theta) dtheta,  m in [0, 1].
// Evaluated by the arithmetic-geometric mean to ~1e-15; E(1) = 1 exactly.
#pragma once

namespace baxxz {

double complete_elliptic_e(double m);

}  // namespace baxxz
