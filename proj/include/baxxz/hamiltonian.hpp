// Sparse Hamiltonian of the bond-alternating XXZ ring in a fixed-Sz sector.
// Diagonal part: sum_n J_n Delta z_n z_{n+1} with z = +/-1 from the bits;
// off-diagonal: the xy term maps anti-aligned neighbours (n, n+1) to the
// bit-swapped configuration with amplitude 2 J_n.
#pragma once

#include <Eigen/SparseCore>

#include "baxxz/basis.hpp"
#include "baxxz/chain.hpp"

namespace baxxz {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Builds the sector Hamiltonian. Throws when the estimated storage exceeds
// memory_budget_gb.
SparseMat build_hamiltonian(const ChainSpec& spec, const SectorBasis& basis,
                            double memory_budget_gb = 2.0);

}  // namespace baxxz
