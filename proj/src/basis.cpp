#include "baxxz/basis.hpp"

#include <bit>

#include "baxxz/common.hpp"

namespace baxxz {

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<uint64_t>(n - k + i) / i;
  return c;
}

std::size_t SectorBasis::index_of(uint32_t config) const {
  // Rank among fixed-popcount words: sum C(bit position, #set bits so far).
  std::size_t rank = 0;
  int seen = 0;
  uint32_t w = config;
  while (w != 0) {
    const int b = std::countr_zero(w);
    ++seen;
    rank += binomial(b, seen);
    w &= w - 1;
  }
  return rank;
}

SectorBasis sector_basis(int N, int sz) {
  if (N < 2 || N % 2 != 0 || N > 30)
    throw Error("sector_basis: N must be even and within [2, 30]");
  if (sz < -N / 2 || sz > N / 2)
    throw Error("sector_basis: |Sz| may not exceed N/2");
  SectorBasis b;
  b.N = N;
  b.sz = sz;
  b.n_up = N / 2 + sz;
  b.states.reserve(binomial(N, b.n_up));
  if (b.n_up == 0) {
    b.states.push_back(0);
    return b;
  }
  const uint32_t limit = (N == 32) ? 0xffffffffu : ((1u << N) - 1u);
  uint32_t v = (1u << b.n_up) - 1u;  // smallest word with n_up bits set
  while (true) {
    b.states.push_back(v);
    // Gosper's hack: next word with the same popcount.
    const uint32_t c = v & (~v + 1u);
    const uint32_t r = v + c;
    if (r > limit || c == 0) break;
    v = r | (((v ^ r) >> 2) / c);
    if (v > limit) break;
  }
  return b;
}

uint32_t reverse_bits(uint32_t config, int bits) {
  uint32_t out = 0;
  for (int i = 0; i < bits; ++i)
    if (config & (1u << i)) out |= 1u << (bits - 1 - i);
  return out;
}

}  // namespace baxxz
