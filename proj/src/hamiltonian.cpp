#include "baxxz/hamiltonian.hpp"

#include <bit>
#include <vector>

#include "baxxz/common.hpp"

namespace baxxz {

SparseMat build_hamiltonian(const ChainSpec& spec, const SectorBasis& basis,
                            double memory_budget_gb) {
  spec.validate();
  if (basis.N != spec.N)
    throw Error("build_hamiltonian: basis and spec disagree on N");
  const int N = spec.N;
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  // Row = diagonal + one entry per anti-aligned bond (<= N).
  const double est_bytes = static_cast<double>(dim) * (N + 1) * 12.0;
  if (est_bytes > memory_budget_gb * 1e9)
    throw Error("build_hamiltonian: sector dimension exceeds the memory "
                "budget of " + std::to_string(memory_budget_gb) + " GB");

  const std::vector<double> j = bond_strengths(N, spec.delta);
  SparseMat h(dim, dim);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * (N / 2 + 2));
  for (Eigen::Index row = 0; row < dim; ++row) {
    const uint32_t s = basis.states[row];
    double diag = 0.0;
    for (int n = 1; n <= N; ++n) {
      const int i = n - 1, k = n % N;  // bits of sites n and n+1
      const bool zi = (s >> i) & 1u, zk = (s >> k) & 1u;
      if (zi == zk) {
        diag += j[n - 1] * spec.Delta;
      } else {
        diag -= j[n - 1] * spec.Delta;
        const uint32_t flipped = s ^ ((1u << i) | (1u << k));
        const auto col = static_cast<Eigen::Index>(basis.index_of(flipped));
        trip.emplace_back(row, col, 2.0 * j[n - 1]);
      }
    }
    trip.emplace_back(row, row, diag);
  }
  h.setFromTriplets(trip.begin(), trip.end());
  h.makeCompressed();
  return h;
}

}  // namespace baxxz
