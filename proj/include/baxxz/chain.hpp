// Bond-alternating spin-1/2 XXZ ring:
//   H = sum_n [1 + (-1)^n delta] (sx_n sx_{n+1} + sy_n sy_{n+1} + Delta sz_n sz_{n+1})
// with Pauli matrices s{x,y,z}, N even, periodic boundary (site N+1 = site 1).
// Odd bonds carry 1-delta, even bonds 1+delta, so the two-site unit cell
// (2m-1, 2m) has intra-cell coupling 1-delta and inter-cell coupling 1+delta.
// Subsystem A is the contiguous block of sites 1..L_A (L_A even); both of its
// boundary bonds (bond L_A and bond N) are inter-cell bonds of strength 1+delta.
#pragma once

#include <vector>

namespace baxxz {

struct ChainSpec {
  int N = 8;            // number of sites, even, >= 4
  double delta = 0.0;   // bond alternation, (-1, 1]
  double Delta = 1.0;   // Ising anisotropy
  int L_A = 2;          // block length, even, 2 <= L_A <= N/2 unless overridden
  double epsilon = 5e-3;  // finite-difference step along the sweep parameter
  bool allow_large_block = false;  // permit L_A up to N-2 for diagnostics

  // Throws Error with a description of the first violated constraint.
  void validate() const;
};

// Strength of bond n (1-based, connects sites n and n+1; bond N closes the
// ring): 1 + (-1)^n * delta.
double bond_strength(int n, double delta);

// All N bond strengths, index 0 holding bond 1.
std::vector<double> bond_strengths(int N, double delta);

// Site permutation reversing the block, p[i] = L_A + 1 - i (1-based values,
// entry 0 holds the image of site 1). An involution.
std::vector<int> block_inversion_permutation(int L_A);

}  // namespace baxxz
