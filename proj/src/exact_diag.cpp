#include "baxxz/exact_diag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "baxxz/common.hpp"
#include "baxxz/hamiltonian.hpp"

namespace baxxz {

GroundState ground_state(const ChainSpec& spec, const EdOptions& opts) {
  spec.validate();
  if (spec.N > opts.n_cap)
    throw Error("ground_state: N = " + std::to_string(spec.N) +
                " exceeds the cap of " + std::to_string(opts.n_cap));
  const SectorBasis basis = sector_basis(spec.N, 0);
  const SparseMat h = build_hamiltonian(spec, basis, opts.memory_budget_gb);

  LanczosOptions lopt;
  lopt.tol = opts.tol;
  lopt.max_iter = opts.max_iter;
  lopt.restart_len = opts.restart_len;
  lopt.seed = opts.seed;
  // The sector ground state is the Perron-Frobenius vector of the staggered-
  // gauged Hamiltonian, hence unique and even/odd under global spin flip with
  // parity (-1)^(N/2).  Pinning that parity keeps Lanczos away from the
  // quasi-degenerate partner deep in the Neel regime.
  if (opts.pin_flip_parity) {
    const Eigen::Index dim = basis.dim();
    std::vector<Eigen::Index> flip(static_cast<std::size_t>(dim));
    const std::uint32_t mask = (spec.N == 32) ? 0xffffffffu
                                              : ((1u << spec.N) - 1u);
    for (Eigen::Index i = 0; i < dim; ++i)
      flip[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(
          basis.index_of(basis.states[static_cast<std::size_t>(i)] ^ mask));
    const double sign = (spec.N / 2) % 2 == 0 ? 1.0 : -1.0;
    lopt.project_into = [flip = std::move(flip), sign](Eigen::VectorXd& w) {
      Eigen::VectorXd fw(w.size());
      for (Eigen::Index i = 0; i < w.size(); ++i)
        fw(i) = w(flip[static_cast<std::size_t>(i)]);
      w = 0.5 * (w + sign * fw);
    };
  }
  const LanczosResult lo = lowest_eigenpair(h, lopt);

  GroundState gs;
  gs.spec = spec;
  gs.energy = lo.value;
  gs.e0 = lo.value / spec.N;
  gs.psi = lo.vector;
  gs.residual = lo.residual;
  gs.iterations = lo.iterations;
  if (opts.compute_gap && basis.dim() > 1) {
    LanczosOptions gopt = lopt;
    gopt.tol = opts.gap_tol;
    gopt.seed = opts.seed + 1;
    gopt.project_into = nullptr;  // the partner may sit in either flip sector
    const LanczosResult first = lowest_eigenpair(h, gopt, {gs.psi});
    gs.gap = first.value - lo.value;
    gs.quasi_degenerate = gs.gap < 1e-8;
  }
  return gs;
}

Eigen::MatrixXd reduced_density_matrix(const GroundState& gs) {
  const ChainSpec& spec = gs.spec;
  spec.validate();
  const int L = spec.L_A;
  const int dim_a = 1 << L;
  if (static_cast<double>(dim_a) * dim_a * 8.0 > 2e9)
    throw Error("reduced_density_matrix: block too large for dense storage");
  const SectorBasis basis = sector_basis(spec.N, 0);
  if (gs.psi.size() != static_cast<Eigen::Index>(basis.dim()))
    throw Error("reduced_density_matrix: state size does not match sector");

  // Group amplitudes by environment configuration; every group contributes
  // an outer product to a single magnetization block of rho.
  const uint32_t mask_a = (1u << L) - 1u;
  std::vector<std::vector<std::pair<uint32_t, double>>> groups(
      std::size_t{1} << (spec.N - L));
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const uint32_t s = basis.states[i];
    groups[s >> L].emplace_back(s & mask_a, gs.psi(static_cast<Eigen::Index>(i)));
  }
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim_a, dim_a);
  for (const auto& g : groups)
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i; j < g.size(); ++j) {
        const double v = g[i].second * g[j].second;
        rho(g[i].first, g[j].first) += v;
        if (i != j) rho(g[j].first, g[i].first) += v;
      }
  return rho;
}

EntanglementSpectrum labeled_entanglement_spectrum(const Eigen::MatrixXd& rho,
                                                   int L_A) {
  const int dim = 1 << L_A;
  if (rho.rows() != dim || rho.cols() != dim)
    throw Error("labeled_entanglement_spectrum: rho is not 2^L_A square");

  // Block inversion acts on configurations by reversing the L_A bits.
  std::vector<int> perm(dim);
  for (int a = 0; a < dim; ++a)
    perm[a] = static_cast<int>(reverse_bits(static_cast<uint32_t>(a), L_A));
  double comm = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      comm = std::max(comm, std::abs(rho(perm[i], perm[j]) - rho(i, j)));
  if (comm > 1e-8)
    throw Error("labeled_entanglement_spectrum: block inversion does not "
                "commute with rho (deviation " + std::to_string(comm) + ")");

  EntanglementSpectrum es;
  es.floor = tol::eigenvalue_floor;
  es.levels.reserve(dim);
  double trace = 0.0;

  for (int nup = 0; nup <= L_A; ++nup) {
    std::vector<int> configs;
    for (int a = 0; a < dim; ++a)
      if (std::popcount(static_cast<uint32_t>(a)) == nup) configs.push_back(a);
    const int bd = static_cast<int>(configs.size());
    Eigen::MatrixXd block(bd, bd);
    for (int i = 0; i < bd; ++i)
      for (int j = 0; j < bd; ++j) block(i, j) = rho(configs[i], configs[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    if (solver.info() != Eigen::Success)
      throw Error("labeled_entanglement_spectrum: eigensolver failed");

    // Reorder to non-increasing eigenvalues.
    std::vector<double> w(bd);
    Eigen::MatrixXd vecs(bd, bd);
    for (int i = 0; i < bd; ++i) {
      w[i] = solver.eigenvalues()(bd - 1 - i);
      vecs.col(i) = solver.eigenvectors().col(bd - 1 - i);
    }
    if (!w.empty() && w.back() < -1e-8)
      throw Error("labeled_entanglement_spectrum: rho has a negative "
                  "eigenvalue beyond tolerance");

    // Inversion restricted to this magnetization block, in block indices.
    std::vector<int> pos(dim, -1);
    for (int i = 0; i < bd; ++i) pos[configs[i]] = i;
    std::vector<int> pblk(bd);
    for (int i = 0; i < bd; ++i) pblk[i] = pos[perm[configs[i]]];

    // Relative clustering misses doublets whose absolute splitting sits
    // below the eigensolver's resolution (~1e-16): their eigenvectors are
    // arbitrary mixtures, so the inversion is only +/-1 on the merged span.
    auto clusters = degeneracy_clusters(w, tol::degeneracy_rel);
    constexpr double resolution_gap = 1e-14;
    for (std::size_t c = clusters.size(); c-- > 1;) {
      if (w[clusters[c - 1].second - 1] - w[clusters[c].first] <=
          resolution_gap) {
        clusters[c - 1].second = clusters[c].second;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(c));
      }
    }
    for (const auto& [lo, hi] : clusters) {
      const int d = static_cast<int>(hi - lo);
      bool label = w[lo] >= es.floor;
      std::vector<int> parity(d, 0);
      if (label) {
        // Rotate the cluster so each eigenvector has definite parity.
        Eigen::MatrixXd v = vecs.middleCols(static_cast<int>(lo), d);
        Eigen::MatrixXd pv(v.rows(), d);
        for (int c2 = 0; c2 < d; ++c2)
          for (int i = 0; i < bd; ++i) pv(pblk[i], c2) = v(i, c2);
        Eigen::MatrixXd s = v.transpose() * pv;
        s = 0.5 * (s + s.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rot(s);
        bool resolved = true;
        for (int c2 = 0; c2 < d; ++c2)
          if (std::abs(std::abs(rot.eigenvalues()(c2)) - 1.0) > 1e-6)
            resolved = false;
        if (resolved) {
          for (int c2 = 0; c2 < d; ++c2)
            parity[c2] = rot.eigenvalues()(c2) > 0.0 ? 1 : -1;
        } else if (w[lo] < 1e3 * es.floor) {
          // Within a few decades of the floor a non-closing cluster only
          // means its partner levels are numerically unresolvable; leave
          // those levels unlabeled rather than failing the whole spectrum.
          label = false;
        } else {
          throw Error("labeled_entanglement_spectrum: inversion is not "
                      "+/-1 on a degenerate cluster");
        }
      }
      for (int c = 0; c < d; ++c) {
        EsLevel lvl;
        lvl.omega = std::max(w[lo + c], 0.0);
        lvl.sz = nup - L_A / 2;
        if (label) {
          lvl.xi = -std::log(lvl.omega);
          lvl.parity = parity[c];
          lvl.labeled = true;
        }
        trace += w[lo + c];
        es.levels.push_back(lvl);
      }
    }
  }
  es.trace = trace;
  std::stable_sort(
      es.levels.begin(), es.levels.end(),
      [](const EsLevel& a, const EsLevel& b) { return a.omega > b.omega; });
  return es;
}

}  // namespace baxxz
