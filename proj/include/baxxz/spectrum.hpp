// Entanglement spectrum of a block: density-matrix eigenvalues omega sorted
// non-increasing, each level above the numerical floor carrying its block
// quantum numbers (Sz_A and the parity p under block inversion) and the
// entanglement energy xi = -ln omega.
#pragma once

#include <cstddef>
#include <vector>

namespace baxxz {

struct EsLevel {
  double omega = 0.0;  // density-matrix eigenvalue
  double xi = 0.0;     // -ln(omega); only meaningful when labeled
  int sz = 0;          // block Sz in units of hbar
  int parity = 0;      // block-inversion eigenvalue, +1 / -1; 0 when unlabeled
  bool labeled = false;
};

struct EntanglementSpectrum {
  std::vector<EsLevel> levels;  // sorted by omega, non-increasing
  double trace = 0.0;           // sum of all eigenvalues before any floor
  double floor = 0.0;           // labeling floor applied to omega

  std::size_t size() const { return levels.size(); }
  // Eigenvalues only, in the stored (non-increasing) order.
  std::vector<double> omegas() const;
  // Number of levels at or above the floor.
  std::size_t labeled_count() const;
};

// Partitions indices of a non-increasing eigenvalue list into clusters of
// relative width rel_tol; returns [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> degeneracy_clusters(
    const std::vector<double>& sorted_omega, double rel_tol);

}  // namespace baxxz
