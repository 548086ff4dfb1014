// Restarted Lanczos with full reorthogonalization for the lowest eigenpair of
// a sparse symmetric matrix, with optional deflation against already
// converged vectors (used to reach the first excited level).
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "baxxz/hamiltonian.hpp"

namespace baxxz {

struct LanczosOptions {
  double tol = 1e-10;     // residual ||H x - theta x||
  int max_iter = 2000;    // total matrix applications across restarts
  int restart_len = 200;  // Krylov length per restart (memory cap)
  uint64_t seed = 0;      // deterministic start-vector seed
  // Optional projector onto an H-invariant subspace (e.g. a symmetry
  // sector); applied to start vectors and every Krylov vector so the
  // iteration never leaks into quasi-degenerate partner sectors.
  std::function<void(Eigen::VectorXd&)> project_into;
};

struct LanczosResult {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

LanczosResult lowest_eigenpair(
    const SparseMat& h, const LanczosOptions& opts = {},
    const std::vector<Eigen::VectorXd>& deflate = {});

}  // namespace baxxz
