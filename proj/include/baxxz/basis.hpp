// Fixed-Sz basis of the spin-1/2 chain. Site n (1-based) maps to bit n-1 of a
// configuration word; a set bit is spin up (sz = +1). The sector with total
// Sz = S holds the C(N, N/2 + S) configurations with popcount N/2 + S.
#pragma once

#include <cstdint>
#include <vector>

namespace baxxz {

struct SectorBasis {
  int N = 0;        // number of sites
  int sz = 0;       // total Sz in units of hbar (integer for N even)
  int n_up = 0;     // popcount of every configuration
  std::vector<uint32_t> states;  // ascending configuration words

  std::size_t dim() const { return states.size(); }
  // Ordinal of a configuration within the sector (combinadic ranking, O(N)).
  std::size_t index_of(uint32_t config) const;
};

// Enumerates the Sz sector. Throws if N is odd, out of [2, 30], or |sz| > N/2.
SectorBasis sector_basis(int N, int sz);

// Binomial coefficient for the small arguments used here (n <= 34).
uint64_t binomial(int n, int k);

// Reverses the lowest `bits` bits of a configuration word (block inversion);
// bits above the block are discarded.
uint32_t reverse_bits(uint32_t config, int bits);

}  // namespace baxxz
