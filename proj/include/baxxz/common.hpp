// Shared error types and numerical conventions used across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace baxxz {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested diagnostic does not exist for these parameters
// (e.g. edge-mode report on the topologically trivial side).
struct NoEdgeModesError : Error {
  using Error::Error;
};

// A maximum/stationary-point search hit the edge of the sweep grid.
struct BoundaryExtremumError : Error {
  using Error::Error;
};

// A root search found no sign change on the grid.
struct NoSignChangeError : Error {
  using Error::Error;
};

// Iterative eigensolver failed to reach the requested residual.
struct NotConvergedError : Error {
  using Error::Error;
};

namespace tol {
// Density-matrix eigenvalues below this are treated as numerically zero:
// they are dropped from entanglement levels, effective-rank counts and
// majorization partial sums.
inline constexpr double eigenvalue_floor = 1e-13;
// Entropy differences smaller than this carry no sign in convertibility maps.
inline constexpr double dlc_dead_zone = 1e-12;
// Relative spacing below which density-matrix eigenvalues are considered
// degenerate (symmetry labels are then assigned cluster-wise).
inline constexpr double degeneracy_rel = 1e-10;
// Width of the alpha-window around 1 evaluated as the von Neumann limit.
inline constexpr double alpha_one_window = 1e-3;
}  // namespace tol

}  // namespace baxxz
