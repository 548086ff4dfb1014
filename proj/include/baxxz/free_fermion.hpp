// Free-fermion solution of the bond-alternating chain at Delta = 0.
//
// After the spin chain of N = 2M sites is fermionized, the fermion-parity
// string on the ring bond makes the half-filled chain periodic when M is odd
// and anti-periodic when M is even. With the two-site unit cell (a, b) and
// momentum offsets p_k (= 2k for M odd, 2k+1 for M even, k = 1..M) the Bloch
// Hamiltonian is R(k).sigma with
//   R_x(k) = 2(1-delta) + 2(1+delta) cos(p_k pi / M),
//   R_y(k) = 2(1+delta) sin(p_k pi / M),   R_z = 0,
//   |R(k)| = 4 sqrt(cos^2(p_k pi / 2M) + delta^2 sin^2(p_k pi / 2M)).
// The ground state fills the lower band; e0 = -(1/2M) sum_k |R(k)|.
//
// Block correlations C_{mn} = <c_m c_n^dag> (2x2 kernels over unit cells) are
// assembled from G(k) = (1/2)[I + Rhat(k).sigma]; the eigenvalues q_l of the
// L_A x L_A block determine the reduced density matrix: each mode contributes
// a factor q_l (mode empty) or 1 - q_l (mode occupied, one spin up).
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "baxxz/spectrum.hpp"

namespace baxxz {

enum class BoundaryFlavor { periodic, antiperiodic };

// p_k offsets, k = 1..M: even integers 2k when M is odd, odd 2k+1 when even.
std::vector<int> momentum_offsets(int M);

struct BlochData {
  int M = 0;
  double delta = 0.0;
  BoundaryFlavor flavor = BoundaryFlavor::periodic;
  std::vector<int> p;     // momentum offsets
  std::vector<double> rx, ry, r;  // Bloch vector components and modulus
};

BlochData bloch_data(int M, double delta);

// |R(k)| for the 1-based momentum index k.
double dispersion(int M, double delta, int k);

// Ground-state energy per site of the 2M-site chain, -(1/2M) sum_k |R(k)|,
// accumulated by pairwise summation.
double ground_energy_per_site(int M, double delta);

// Thermodynamic limit: -(4/pi) E(1 - delta^2) with E the complete elliptic
// integral of the second kind.
double ground_energy_thermo(double delta);

// Winding number of (R_x, R_y) around the origin: 1 for delta > 0, 0 for
// delta < 0. Throws at delta = 0 (gap closes, winding undefined).
int winding_number(double delta);

// Lower-band Berry phase from the discrete Wilson loop on `grid_size` points
// (>= 64). Returns a value in [0, 2pi); pi on the winding side, 0 otherwise.
double berry_phase(double delta, int grid_size = 256);

struct CorrelationBlock {
  int M = 0;          // unit cells in the full ring (quadrature size in the
                      // thermodynamic mode)
  double delta = 0.0;
  int L_A = 0;        // block sites
  Eigen::MatrixXd C;  // L_A x L_A block of <c c^dag>, real symmetric
  Eigen::VectorXd q;  // eigenvalues, ascending, clipped to [0, 1]
  Eigen::MatrixXd modes;        // eigenvectors (columns), rotated so that each
                                // is an eigenvector of block inversion
  std::vector<int> mode_parity;  // inversion eigenvalue of each mode, +1/-1
};

// Correlation block of sites 1..L_A for the finite ring of M unit cells.
CorrelationBlock correlation_matrix(int M, double delta, int L_A);

// Thermodynamic-limit block: the k-sum is evaluated as a quadrature over
// m_eff momenta.
CorrelationBlock correlation_matrix_thermo(double delta, int L_A,
                                           int m_eff = 4096);

// Occupation spectrum accessor (ascending).
std::vector<double> occupation_spectrum(const CorrelationBlock& block);

// Renyi entropy S_alpha = (1/(1-alpha)) sum_l ln[q_l^alpha + (1-q_l)^alpha].
// alpha must be > 0; +infinity selects S_inf = -sum ln max(q, 1-q); values
// within the alpha~1 window evaluate the von Neumann limit.
double renyi_from_occupations(const std::vector<double>& q, double alpha);

// alpha -> 0 limit (log of the number of nonzero density-matrix eigenvalues):
// ln2 times the number of modes with min(q, 1-q) above the floor.
double renyi_rank_from_occupations(const std::vector<double>& q,
                                   double floor);

// All 2^L density-matrix eigenvalues as products of q / (1-q) factors,
// sorted non-increasing. Guarded to L <= 20.
std::vector<double> rho_spectrum_full(const std::vector<double>& q);

// The largest density-matrix eigenvalues in non-increasing order, at most
// max_count of them and none below `floor`. Best-first subset enumeration;
// works for blocks far too large for the full 2^L spectrum.
std::vector<double> rho_spectrum_top(const std::vector<double>& q,
                                     std::size_t max_count, double floor);

// Entanglement spectrum with (Sz, inversion parity) labels built from the
// correlation block. A state occupying the mode subset S has
//   omega = prod_{l in S} (1-q_l) * prod_{l notin S} q_l,
//   Sz    = |S| - L_A/2,
//   p     = (-1)^{|S|(|S|-1)/2} * prod_{l in S} parity_l,
// the sign factor accounting for the operator reordering that maps the
// fermionic reflection onto the spin-basis block inversion. Guarded to
// L_A <= 16.
EntanglementSpectrum labeled_spectrum_from_occupations(
    const CorrelationBlock& block);
EntanglementSpectrum labeled_spectrum_from_occupations(
    const std::vector<double>& q, const std::vector<int>& mode_parity);

struct EdgeModeReport {
  double q1 = 0.0;      // edge occupation >= 1/2
  double q2 = 0.0;      // partner occupation
  double lambda = 0.0;  // q1 - 1/2
  double eps1 = 0.0;    // ln(q1 / (1 - q1)) >= 0
  Eigen::VectorXd left, right;     // edge wavefunctions, mirror images
  double factorization_error = 0.0;  // max deviation of the two-edge-mode
                                     // reconstruction over the largest 16
                                     // density-matrix eigenvalues
};

// Identifies the pair of near-half occupations (|q - 1/2| < 0.2), their
// left/right-localized combinations and the quality of the factorized
// description. Throws NoEdgeModesError when no such pair exists (trivial,
// delta < 0, side).
EdgeModeReport edge_mode_report(const CorrelationBlock& block);

}  // namespace baxxz
