#include "baxxz/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "baxxz/common.hpp"

namespace baxxz {

double complete_elliptic_e(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw Error("complete_elliptic_e: parameter m must lie in [0, 1]");
  if (m == 0.0) return std::numbers::pi / 2.0;
  // K(1) diverges, but E(1) = 1; treat the endpoint (and its floating-point
  // neighbourhood, where the AGM cancellation K*(1 - sum) loses all digits)
  // separately. For 1 - m <= 1e-16 the series E = 1 + O((1-m) ln(1-m))
  // contributes below 1e-14.
  if (1.0 - m <= 1e-16) return 1.0;

  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c2_sum = 0.5 * m;  // 2^{n-1} c_n^2 accumulated, n = 0 term is m/2
  double pow2 = 0.5;
  for (int n = 0; n < 64; ++n) {
    const double an = 0.5 * (a + b);
    const double c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    c2_sum += pow2 * c * c;
    if (c < 1e-17 * a) break;
  }
  const double k_complete = std::numbers::pi / (2.0 * a);
  return k_complete * (1.0 - c2_sum);
}

}  // namespace baxxz
