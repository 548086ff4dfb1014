// Renyi entropies S_alpha = ln(sum_j omega_j^alpha) / (1 - alpha) of a
// density-matrix spectrum, the alpha grid used for convertibility scans, and
// the derived single numbers (purity witness W, Schmidt gap).
//
// Conventions pinned here:
//  * eigenvalues below the floor (1e-13) are numerically zero and excluded,
//  * alpha = 1 and any alpha within 1e-3 of it evaluate the von Neumann
//    limit -sum omega ln omega (the raw quotient loses all digits there),
//  * alpha = +infinity evaluates -ln(max omega),
//  * the alpha -> 0 effective-rank limit is a separate function, not an
//    accepted alpha value.
#pragma once

#include <vector>

#include "baxxz/common.hpp"

namespace baxxz {

struct AlphaGridSpec {
  int count = 200;        // log-spaced interior points
  double min = 1e-2;
  double max = 1e3;
  bool include_one = true;
  bool include_inf = true;
};

// Sorted grid: `count` log-spaced values in [min, max], plus the sentinels
// alpha = 1 (inserted in order) and alpha = +infinity (last).
std::vector<double> make_alpha_grid(const AlphaGridSpec& spec = {});

// S_alpha of the spectrum. Throws on alpha <= 0 and when the spectrum is not
// normalized within 1e-10.
double renyi_entropy(const std::vector<double>& omega, double alpha,
                     double floor = tol::eigenvalue_floor);

// Effective-rank limit: ln(number of eigenvalues above the floor).
double renyi_rank(const std::vector<double>& omega,
                  double floor = tol::eigenvalue_floor);

// S_alpha evaluated on every grid value.
std::vector<double> renyi_grid_values(const std::vector<double>& omega,
                                      const std::vector<double>& alphas,
                                      double floor = tol::eigenvalue_floor);

// Pairwise-entanglement witness W = 4 sum_j omega_j^2 = 4 exp(-S_2), in
// (0, 4]; equals 1 at the four-fold degenerate dimer point.
double purity_w(const std::vector<double>& omega);

// Difference of the two largest eigenvalues. Throws when fewer than two
// eigenvalues sit above the floor.
double schmidt_gap(const std::vector<double>& omega,
                   double floor = tol::eigenvalue_floor);

}  // namespace baxxz
