#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "baxxz/basis.hpp"
#include "baxxz/chain.hpp"
#include "baxxz/common.hpp"
#include "baxxz/exact_diag.hpp"
#include "baxxz/lanczos.hpp"

using namespace baxxz;

namespace {

// Dense 2^N Hamiltonian built directly from the Pauli definition; the
// independent oracle for the sparse sector build and the Lanczos pipeline.
Eigen::MatrixXd dense_xxz(int N, double delta, double Delta) {
  const int dim = 1 << N;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n <= N; ++n) {
    const double j = 1.0 + ((n % 2 == 0) ? delta : -delta);
    const int a = n - 1;
    const int b = n % N;
    for (int s = 0; s < dim; ++s) {
      const double za = ((s >> a) & 1) ? 1.0 : -1.0;
      const double zb = ((s >> b) & 1) ? 1.0 : -1.0;
      h(s, s) += j * Delta * za * zb;
      if (za * zb < 0.0) h(s ^ (1 << a) ^ (1 << b), s) += 2.0 * j;
    }
  }
  return h;
}

// Ground vector of the dense Hamiltonian (full 2^N space).
Eigen::VectorXd dense_ground_vector(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return es.eigenvectors().col(0);
}

// Reduced density matrix over the low L_A bits of a full-space vector.
Eigen::MatrixXd dense_rdm(const Eigen::VectorXd& psi, int N, int L_A) {
  const int da = 1 << L_A;
  const int de = 1 << (N - L_A);
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(da, da);
  for (int e = 0; e < de; ++e)
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < da; ++b)
        rho(a, b) += psi((e << L_A) | a) * psi((e << L_A) | b);
  return rho;
}

std::vector<double> descending_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> v(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST_CASE("ground energy against dense diagonalization") {
  for (auto [delta, Delta] : std::vector<std::pair<double, double>>{
           {0.3, 0.5}, {-0.4, 2.0}, {0.3, 1.0}, {0.0, 0.0}}) {
    ChainSpec spec;
    spec.N = 8;
    spec.delta = delta;
    spec.Delta = Delta;
    spec.L_A = 2;
    EdOptions opts;
    opts.compute_gap = false;
    const GroundState gs = ground_state(spec, opts);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        dense_xxz(8, delta, Delta));
    CHECK(gs.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
    CHECK(gs.e0 == doctest::Approx(es.eigenvalues()(0) / 8).epsilon(1e-10));
    CHECK(gs.residual <= opts.tol * 10);
    CHECK(gs.psi.size() == 70);
    CHECK(gs.psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sector gap against the dense sector spectrum") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 0.3;
  spec.Delta = 0.5;
  spec.L_A = 2;
  const GroundState gs = ground_state(spec);  // compute_gap defaults on

  // Dense Hamiltonian restricted to the Sz = 0 configurations.
  const SectorBasis basis = sector_basis(8, 0);
  const Eigen::MatrixXd full = dense_xxz(8, 0.3, 0.5);
  Eigen::MatrixXd sector(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    for (std::size_t j = 0; j < basis.dim(); ++j)
      sector(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          full(basis.states[i], basis.states[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector);
  const double want = es.eigenvalues()(1) - es.eigenvalues()(0);
  CHECK(gs.gap == doctest::Approx(want).epsilon(1e-7));
  CHECK(!gs.quasi_degenerate);
  CHECK(gs.gap > 1e-3);
}

TEST_CASE("dimerized point has a large gap and exact energy") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 1.0;
  spec.Delta = 4.0;
  spec.L_A = 2;
  const GroundState gs = ground_state(spec);
  CHECK(gs.e0 == doctest::Approx(-6.0).epsilon(1e-11));
  CHECK(!gs.quasi_degenerate);
}

TEST_CASE("ground state carries the expected global-flip parity") {
  for (auto [N, Delta] : std::vector<std::pair<int, double>>{{8, 0.5},
                                                             {10, 2.0}}) {
    ChainSpec spec;
    spec.N = N;
    spec.delta = 0.3;
    spec.Delta = Delta;
    spec.L_A = 2;
    EdOptions opts;
    opts.compute_gap = false;
    const GroundState gs = ground_state(spec, opts);

    const SectorBasis basis = sector_basis(N, 0);
    const uint32_t mask = (1u << N) - 1;
    double f = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
      const std::size_t j = basis.index_of((~basis.states[i]) & mask);
      f += gs.psi(static_cast<Eigen::Index>(i)) *
           gs.psi(static_cast<Eigen::Index>(j));
    }
    const double want = (N / 2) % 2 == 0 ? 1.0 : -1.0;
    CHECK(f == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("flip-parity pinning does not move the ground state") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 0.3;
  spec.Delta = 0.5;
  spec.L_A = 2;
  EdOptions pinned;
  pinned.compute_gap = false;
  EdOptions free = pinned;
  free.pin_flip_parity = false;
  const GroundState a = ground_state(spec, pinned);
  const GroundState b = ground_state(spec, free);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-9));
  CHECK(std::abs(a.psi.dot(b.psi)) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("reduced density matrix against the dense trace") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 0.3;
  spec.Delta = 0.5;
  spec.L_A = 4;
  EdOptions opts;
  opts.compute_gap = false;
  const GroundState gs = ground_state(spec, opts);
  const Eigen::MatrixXd rho = reduced_density_matrix(gs);
  REQUIRE(rho.rows() == 16);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));

  const Eigen::VectorXd psi = dense_ground_vector(dense_xxz(8, 0.3, 0.5));
  const Eigen::MatrixXd want = dense_rdm(psi, 8, 4);
  CHECK((rho - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("block and complement share the nonzero Schmidt spectrum") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 0.3;
  spec.Delta = 1.5;
  spec.L_A = 6;
  spec.allow_large_block = true;
  EdOptions opts;
  opts.compute_gap = false;
  const GroundState gs = ground_state(spec, opts);
  const std::vector<double> big =
      descending_eigenvalues(reduced_density_matrix(gs));

  const Eigen::VectorXd psi = dense_ground_vector(dense_xxz(8, 0.3, 1.5));
  // Complement of sites 1..6 is the high-bit pair; trace out the low 6 bits.
  Eigen::MatrixXd rho2 = Eigen::MatrixXd::Zero(4, 4);
  for (int e = 0; e < 64; ++e)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        rho2(a, b) += psi((a << 6) | e) * psi((b << 6) | e);
  const std::vector<double> small = descending_eigenvalues(rho2);
  for (std::size_t i = 0; i < small.size(); ++i)
    CHECK(big[i] == doctest::Approx(small[i]).epsilon(1e-9));
  for (std::size_t i = small.size(); i < big.size(); ++i)
    CHECK(std::abs(big[i]) < 1e-10);
}

TEST_CASE("labeled spectrum matches the per-sector dense decomposition") {
  ChainSpec spec;
  spec.N = 8;
  spec.delta = 0.3;
  spec.Delta = 0.5;
  spec.L_A = 4;
  EdOptions opts;
  opts.compute_gap = false;
  const GroundState gs = ground_state(spec, opts);
  const Eigen::MatrixXd rho = reduced_density_matrix(gs);
  const EntanglementSpectrum es = labeled_entanglement_spectrum(rho, 4);
  REQUIRE(es.size() == 16);
  CHECK(es.trace == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::is_sorted(es.levels.begin(), es.levels.end(),
                       [](const EsLevel& x, const EsLevel& y) {
                         return x.omega > y.omega;
                       }));

  // Per-Sz eigenvalues from an independent block split of the dense RDM.
  std::vector<std::pair<int, double>> want;
  for (int sz = -2; sz <= 2; ++sz) {
    std::vector<int> idx;
    for (int a = 0; a < 16; ++a)
      if (std::popcount(static_cast<unsigned>(a)) == sz + 2) idx.push_back(a);
    Eigen::MatrixXd block(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rho(idx[i], idx[j]);
    for (double w : descending_eigenvalues(block)) want.push_back({sz, w});
  }
  auto by_sz_then_omega = [](const std::pair<int, double>& x,
                             const std::pair<int, double>& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  };
  std::sort(want.begin(), want.end(), by_sz_then_omega);
  std::vector<std::pair<int, double>> got;
  for (const EsLevel& lv : es.levels) got.push_back({lv.sz, lv.omega});
  std::sort(got.begin(), got.end(), by_sz_then_omega);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].first == want[i].first);
    CHECK(got[i].second == doctest::Approx(want[i].second).epsilon(1e-9));
  }

  // Parity labels reproduce the basis-independent trace of rho * inversion.
  double tr_rp = 0.0;
  for (int a = 0; a < 16; ++a)
    tr_rp += rho(a, static_cast<int>(reverse_bits(static_cast<uint32_t>(a), 4)));
  double sum_pw = 0.0;
  for (const EsLevel& lv : es.levels)
    if (lv.labeled) sum_pw += lv.parity * lv.omega;
  CHECK(sum_pw == doctest::Approx(tr_rp).epsilon(1e-9));
}

TEST_CASE("length guard refuses oversized chains") {
  ChainSpec spec;
  spec.N = 22;
  spec.delta = 0.3;
  spec.Delta = 1.0;
  spec.L_A = 4;
  CHECK_THROWS_AS(ground_state(spec), Error);
}

TEST_CASE("Lanczos against a dense random oracle") {
  const int n = 400;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  auto add = [&](int i, int j, double v) {
    trips.emplace_back(i, j, v);
    dense(i, j) += v;
  };
  for (int i = 0; i < n; ++i) add(i, i, u(rng));
  for (int i = 0; i + 1 < n; ++i) {
    const double v = u(rng);
    add(i, i + 1, v);
    add(i + 1, i, v);
  }
  for (int i = 0; i + 7 < n; ++i) {
    const double v = 0.3 * u(rng);
    add(i, i + 7, v);
    add(i + 7, i, v);
  }
  SparseMat h(n, n);
  h.setFromTriplets(trips.begin(), trips.end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);

  LanczosOptions opts;
  const LanczosResult r0 = lowest_eigenpair(h, opts);
  CHECK(r0.converged);
  CHECK(r0.value == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
  CHECK(r0.residual <= opts.tol * 10);

  const LanczosResult r1 = lowest_eigenpair(h, opts, {r0.vector});
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-8));

  LanczosOptions tight = opts;
  tight.restart_len = 12;  // force several restarts
  const LanczosResult rr = lowest_eigenpair(h, tight);
  CHECK(rr.converged);
  CHECK(rr.value == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
}

TEST_CASE("Lanczos subspace projector confines the iteration") {
  const int n = 64;
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < n; ++i)
    trips.emplace_back(i, i, static_cast<double>(n - i));  // min at i = n-1
  SparseMat h(n, n);
  h.setFromTriplets(trips.begin(), trips.end());
  LanczosOptions opts;
  // Zero out odd coordinates: the invariant subspace of even indices, whose
  // smallest diagonal entry sits at i = n - 2.
  opts.project_into = [](Eigen::VectorXd& v) {
    for (Eigen::Index i = 1; i < v.size(); i += 2) v(i) = 0.0;
  };
  const LanczosResult r = lowest_eigenpair(h, opts);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  for (Eigen::Index i = 1; i < n; i += 2)
    CHECK(std::abs(r.vector(i)) < 1e-10);
}
