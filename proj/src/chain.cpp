#include "baxxz/chain.hpp"

#include <cmath>

#include "baxxz/common.hpp"

namespace baxxz {

void ChainSpec::validate() const {
  if (N < 4 || N % 2 != 0) throw Error("ChainSpec: N must be even and >= 4");
  if (!(delta > -1.0 && delta <= 1.0))
    throw Error("ChainSpec: delta must lie in (-1, 1]");
  if (!std::isfinite(Delta)) throw Error("ChainSpec: Delta must be finite");
  if (L_A < 2 || L_A % 2 != 0)
    throw Error("ChainSpec: L_A must be even and >= 2");
  const int cap = allow_large_block ? N - 2 : N / 2;
  if (L_A > cap)
    throw Error("ChainSpec: L_A exceeds " + std::to_string(cap) +
                (allow_large_block ? "" : " (= N/2; set allow_large_block to override)"));
  if (!(epsilon > 0.0)) throw Error("ChainSpec: epsilon must be positive");
}

double bond_strength(int n, double delta) {
  return 1.0 + (n % 2 == 0 ? delta : -delta);
}

std::vector<double> bond_strengths(int N, double delta) {
  if (N < 4 || N % 2 != 0) throw Error("bond_strengths: N must be even and >= 4");
  std::vector<double> j(N);
  for (int n = 1; n <= N; ++n) j[n - 1] = bond_strength(n, delta);
  return j;
}

std::vector<int> block_inversion_permutation(int L_A) {
  if (L_A < 2 || L_A % 2 != 0)
    throw Error("block_inversion_permutation: L_A must be even and >= 2");
  std::vector<int> p(L_A);
  for (int i = 1; i <= L_A; ++i) p[i - 1] = L_A + 1 - i;
  return p;
}

}  // namespace baxxz
