// Ground-state pipeline: Lanczos in the Sz = 0 sector, reduced density
// matrix of the block of sites 1..L_A, and the entanglement spectrum labeled
// by block Sz and block-inversion parity.
#pragma once

#include <Eigen/Dense>

#include "baxxz/basis.hpp"
#include "baxxz/chain.hpp"
#include "baxxz/lanczos.hpp"
#include "baxxz/spectrum.hpp"

namespace baxxz {

struct EdOptions {
  int n_cap = 20;             // refuse chains longer than this
  double memory_budget_gb = 2.0;
  double tol = 1e-10;         // ground-state residual
  double gap_tol = 1e-8;      // residual for the first excited level
  int max_iter = 2000;
  int restart_len = 200;
  uint64_t seed = 0;
  bool compute_gap = true;    // second (deflated) solve for the sector gap
  // Restrict the ground solve to the global-spin-flip sector that provably
  // holds the sector ground state; see ground_state() for the argument.
  bool pin_flip_parity = true;
};

struct GroundState {
  ChainSpec spec;
  double energy = 0.0;    // sector ground energy
  double e0 = 0.0;        // energy per site
  double gap = 0.0;       // to the first excited level in the sector
  bool quasi_degenerate = false;  // gap below 1e-8
  double residual = 0.0;
  int iterations = 0;
  Eigen::VectorXd psi;    // amplitudes over sector_basis(N, 0).states
};

GroundState ground_state(const ChainSpec& spec, const EdOptions& opts = {});

// Dense 2^L_A reduced density matrix of sites 1..L_A (site n = bit n-1).
// Block-diagonal in the block magnetization by construction.
Eigen::MatrixXd reduced_density_matrix(const GroundState& gs);

// Eigendecomposition of the block density matrix with (Sz, inversion parity)
// labels. Degenerate clusters (relative width 1e-10, plus merges across gaps
// below the eigensolver resolution) are rotated so every eigenvector has
// definite parity; eigenvalues below the floor, and near-floor clusters whose
// parity partners are numerically unresolvable, keep their Sz but are left
// unlabeled. Throws when the block inversion fails to commute with rho beyond
// tolerance.
EntanglementSpectrum labeled_entanglement_spectrum(const Eigen::MatrixXd& rho,
                                                   int L_A);

}  // namespace baxxz
