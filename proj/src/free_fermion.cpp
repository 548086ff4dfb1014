#include "baxxz/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>

#include "baxxz/common.hpp"
#include "baxxz/elliptic.hpp"

namespace baxxz {

namespace {
constexpr double kPi = std::numbers::pi;

void check_m(int M) {
  if (M < 1) throw Error("free_fermion: M must be >= 1");
}

// Pairwise sum of f(k) over k in [lo, hi).
template <typename F>
double pairwise_sum(int lo, int hi, const F& f) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (int k = lo; k < hi; ++k) s += f(k);
    return s;
  }
  const int mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f);
}
}  // namespace

std::vector<int> momentum_offsets(int M) {
  check_m(M);
  std::vector<int> p(M);
  const int shift = (M % 2 == 1) ? 0 : 1;  // parity string: odd M periodic
  for (int k = 1; k <= M; ++k) p[k - 1] = 2 * k + shift;
  return p;
}

double dispersion(int M, double delta, int k) {
  check_m(M);
  if (k < 1 || k > M) throw Error("dispersion: momentum index out of range");
  const int shift = (M % 2 == 1) ? 0 : 1;
  const double half = (2 * k + shift) * kPi / (2.0 * M);  // p_k pi / 2M
  const double c = std::cos(half), s = std::sin(half);
  return 4.0 * std::sqrt(c * c + delta * delta * s * s);
}

BlochData bloch_data(int M, double delta) {
  check_m(M);
  BlochData b;
  b.M = M;
  b.delta = delta;
  b.flavor = (M % 2 == 1) ? BoundaryFlavor::periodic
                          : BoundaryFlavor::antiperiodic;
  b.p = momentum_offsets(M);
  b.rx.resize(M);
  b.ry.resize(M);
  b.r.resize(M);
  for (int k = 1; k <= M; ++k) {
    const double phi = b.p[k - 1] * kPi / M;
    b.rx[k - 1] = 2.0 * (1.0 - delta) + 2.0 * (1.0 + delta) * std::cos(phi);
    b.ry[k - 1] = 2.0 * (1.0 + delta) * std::sin(phi);
    b.r[k - 1] = dispersion(M, delta, k);
  }
  return b;
}

double ground_energy_per_site(int M, double delta) {
  check_m(M);
  const double total =
      pairwise_sum(1, M + 1, [&](int k) { return dispersion(M, delta, k); });
  return -total / (2.0 * M);
}

double ground_energy_thermo(double delta) {
  if (!(delta >= -1.0 && delta <= 1.0))
    throw Error("ground_energy_thermo: delta must lie in [-1, 1]");
  return -(4.0 / kPi) * complete_elliptic_e(1.0 - delta * delta);
}

int winding_number(double delta) {
  if (delta == 0.0)
    throw Error("winding_number: undefined at delta = 0 (gap closes)");
  return delta > 0.0 ? 1 : 0;
}

double berry_phase(double delta, int grid_size) {
  if (delta == 0.0)
    throw Error("berry_phase: undefined at delta = 0 (gap closes)");
  if (grid_size < 64) throw Error("berry_phase: grid_size must be >= 64");
  // Lower-band eigenvector of R.sigma (R_z = 0) is (1, -e^{i theta})/sqrt(2)
  // with theta = arg(R_x + i R_y); the Wilson-loop link phase is then
  // arg[(1 + e^{i d theta})/2] = d theta / 2 on the principal branch.
  auto theta = [&](double phi) {
    const double rx = 2.0 * (1.0 - delta) + 2.0 * (1.0 + delta) * std::cos(phi);
    const double ry = 2.0 * (1.0 + delta) * std::sin(phi);
    return std::atan2(ry, rx);
  };
  double gamma = 0.0;
  double prev = theta(0.0);
  for (int j = 1; j <= grid_size; ++j) {
    const double cur = theta(2.0 * kPi * j / grid_size);
    const double link = 0.5 * (1.0 + std::cos(cur - prev));
    if (link <= 0.0)
      throw Error("berry_phase: grid too coarse for this delta");
    gamma -= std::arg(std::complex<double>(
        0.5 * (1.0 + std::cos(cur - prev)), 0.5 * std::sin(cur - prev)));
    prev = cur;
  }
  // Reduce to [0, 2pi).
  gamma = std::fmod(gamma, 2.0 * kPi);
  if (gamma < 0.0) gamma += 2.0 * kPi;
  return gamma;
}

CorrelationBlock correlation_matrix(int M, double delta, int L_A) {
  check_m(M);
  if (L_A < 2 || L_A % 2 != 0)
    throw Error("correlation_matrix: L_A must be even and >= 2");
  if (L_A > M)
    throw Error("correlation_matrix: block may not exceed half the ring");
  const BlochData b = bloch_data(M, delta);
  const int nc = L_A / 2;

  // Translation invariance in the cell index: precompute the 2x2 kernel
  // f(d) = (1/M) sum_k e^{i phi_k d} G(k) for d = -(nc-1) .. nc-1.
  using C2 = Eigen::Matrix2cd;
  std::vector<C2> f(2 * nc - 1, C2::Zero());
  for (int k = 0; k < M; ++k) {
    const double phi = b.p[k] * kPi / M;
    const double inv_r = 1.0 / b.r[k];
    C2 g;  // (1/2)[I + Rhat.sigma]
    const std::complex<double> off(b.rx[k] * inv_r, -b.ry[k] * inv_r);
    g << 1.0, off, std::conj(off), 1.0;
    g *= 0.5;
    for (int d = -(nc - 1); d <= nc - 1; ++d)
      f[d + nc - 1] += std::polar(1.0 / M, phi * d) * g;
  }

  CorrelationBlock blk;
  blk.M = M;
  blk.delta = delta;
  blk.L_A = L_A;
  blk.C.resize(L_A, L_A);
  for (int m = 0; m < nc; ++m)
    for (int n = 0; n < nc; ++n) {
      const C2& g = f[(m - n) + nc - 1];
      blk.C(2 * m, 2 * n) = g(0, 0).real();
      blk.C(2 * m, 2 * n + 1) = g(0, 1).real();
      blk.C(2 * m + 1, 2 * n) = g(1, 0).real();
      blk.C(2 * m + 1, 2 * n + 1) = g(1, 1).real();
    }
  // The assembled block is real symmetric by construction; symmetrize away
  // the last-digit asymmetry before diagonalizing.
  blk.C = 0.5 * (blk.C + blk.C.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.C);
  if (es.info() != Eigen::Success)
    throw Error("correlation_matrix: eigendecomposition failed");
  blk.q = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
  blk.modes = es.eigenvectors();

  // Rotate degenerate occupation clusters so every mode is an eigenvector of
  // the block inversion J (site i -> L_A + 1 - i), and record the parities.
  Eigen::MatrixXd jmat = Eigen::MatrixXd::Zero(L_A, L_A);
  for (int i = 0; i < L_A; ++i) jmat(L_A - 1 - i, i) = 1.0;
  blk.mode_parity.assign(L_A, 0);
  int lo = 0;
  while (lo < L_A) {
    int hi = lo + 1;
    while (hi < L_A && std::abs(blk.q(hi) - blk.q(hi - 1)) <= 1e-10) ++hi;
    const int d = hi - lo;
    Eigen::MatrixXd v = blk.modes.middleCols(lo, d);
    Eigen::MatrixXd s = v.transpose() * jmat * v;
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rot(s);
    for (int i = 0; i < d; ++i) {
      const double ev = rot.eigenvalues()(i);
      if (std::abs(std::abs(ev) - 1.0) > 1e-6)
        throw Error("correlation_matrix: block inversion does not act as "
                    "+/-1 on an occupation cluster");
      blk.mode_parity[lo + i] = ev > 0.0 ? 1 : -1;
    }
    blk.modes.middleCols(lo, d) = v * rot.eigenvectors();
    lo = hi;
  }
  return blk;
}

CorrelationBlock correlation_matrix_thermo(double delta, int L_A, int m_eff) {
  if (m_eff < 2 * L_A)
    throw Error("correlation_matrix_thermo: m_eff too small for this block");
  return correlation_matrix(m_eff, delta, L_A);
}

std::vector<double> occupation_spectrum(const CorrelationBlock& block) {
  return {block.q.data(), block.q.data() + block.q.size()};
}

namespace {
// ln(x^alpha + y^alpha) for x, y in [0, 1], evaluated in log space.
double log_pow_sum(double x, double y, double alpha) {
  if (x <= 0.0 && y <= 0.0) throw Error("log_pow_sum: empty distribution");
  if (x <= 0.0) return alpha * std::log(y);
  if (y <= 0.0) return alpha * std::log(x);
  const double a = alpha * std::log(x), b = alpha * std::log(y);
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double binary_entropy(double q) {
  double s = 0.0;
  if (q > 0.0) s -= q * std::log(q);
  if (q < 1.0) s -= (1.0 - q) * std::log(1.0 - q);
  return s;
}
}  // namespace

double renyi_from_occupations(const std::vector<double>& q, double alpha) {
  if (!(alpha > 0.0))
    throw Error("renyi_from_occupations: alpha must be positive (the "
                "alpha -> 0 rank limit is renyi_rank_from_occupations)");
  if (std::isinf(alpha)) {
    double s = 0.0;
    for (double v : q) s -= std::log(std::max(v, 1.0 - v));
    return s;
  }
  if (std::abs(alpha - 1.0) <= tol::alpha_one_window) {
    double s = 0.0;
    for (double v : q) s += binary_entropy(v);
    return s;
  }
  double s = 0.0;
  for (double v : q) s += log_pow_sum(v, 1.0 - v, alpha);
  return s / (1.0 - alpha);
}

double renyi_rank_from_occupations(const std::vector<double>& q,
                                   double floor) {
  int active = 0;
  for (double v : q)
    if (std::min(v, 1.0 - v) > floor) ++active;
  return active * std::log(2.0);
}

std::vector<double> rho_spectrum_full(const std::vector<double>& q) {
  const int L = static_cast<int>(q.size());
  if (L > 20) throw Error("rho_spectrum_full: more than 20 modes");
  const std::size_t total = std::size_t{1} << L;
  std::vector<double> w(total);
  for (std::size_t s = 0; s < total; ++s) {
    double prod = 1.0;
    for (int l = 0; l < L; ++l)
      prod *= (s >> l) & 1u ? 1.0 - q[l] : q[l];
    w[s] = prod;
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

std::vector<double> rho_spectrum_top(const std::vector<double>& q,
                                     std::size_t max_count, double floor) {
  // Largest eigenvalue: every mode contributes max(q, 1-q). Each further
  // eigenvalue flips a subset of modes, paying cost_l = ln(pmax_l/pmin_l);
  // enumerating subsets in order of total cost yields the eigenvalues in
  // non-increasing order without touching the 2^L tail.
  double log_base = 0.0;
  std::vector<double> cost;
  cost.reserve(q.size());
  for (double v : q) {
    const double pmax = std::max(v, 1.0 - v), pmin = std::min(v, 1.0 - v);
    log_base += std::log(pmax);
    if (pmin > 0.0) cost.push_back(std::log(pmax) - std::log(pmin));
  }
  std::sort(cost.begin(), cost.end());

  std::vector<double> out;
  if (max_count == 0) return out;
  const double top = std::exp(log_base);
  if (top >= floor) out.push_back(top);

  using Node = std::pair<double, std::size_t>;  // (subset cost, last index)
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  if (!cost.empty()) heap.emplace(cost[0], 0);
  while (!heap.empty() && out.size() < max_count) {
    const auto [c, i] = heap.top();
    heap.pop();
    const double w = std::exp(log_base - c);
    if (w < floor) break;  // costs only grow from here
    out.push_back(w);
    if (i + 1 < cost.size()) {
      heap.emplace(c + cost[i + 1], i + 1);           // extend subset
      heap.emplace(c - cost[i] + cost[i + 1], i + 1);  // bump last element
    }
  }
  return out;
}

EntanglementSpectrum labeled_spectrum_from_occupations(
    const std::vector<double>& q, const std::vector<int>& mode_parity) {
  const int L = static_cast<int>(q.size());
  if (L > 16)
    throw Error("labeled_spectrum_from_occupations: block too large for full "
                "enumeration");
  if (mode_parity.size() != q.size())
    throw Error("labeled_spectrum_from_occupations: parity list mismatch");
  EntanglementSpectrum es;
  es.floor = tol::eigenvalue_floor;
  es.levels.reserve(std::size_t{1} << L);
  double trace = 0.0;
  for (std::size_t s = 0; s < (std::size_t{1} << L); ++s) {
    double omega = 1.0;
    int nocc = 0, parity = 1;
    for (int l = 0; l < L; ++l) {
      if ((s >> l) & 1u) {
        omega *= 1.0 - q[static_cast<std::size_t>(l)];
        parity *= mode_parity[static_cast<std::size_t>(l)];
        ++nocc;
      } else {
        omega *= q[static_cast<std::size_t>(l)];
      }
    }
    // Reordering the reflected creation operators back to ascending site
    // order flips the sign once per transposed pair.
    if ((nocc * (nocc - 1) / 2) % 2 != 0) parity = -parity;
    trace += omega;
    EsLevel lvl;
    lvl.omega = omega;
    lvl.sz = nocc - L / 2;
    if (omega >= es.floor) {
      lvl.xi = -std::log(omega);
      lvl.parity = parity;
      lvl.labeled = true;
    }
    es.levels.push_back(lvl);
  }
  es.trace = trace;
  std::sort(es.levels.begin(), es.levels.end(),
            [](const EsLevel& a, const EsLevel& b) { return a.omega > b.omega; });
  return es;
}

EntanglementSpectrum labeled_spectrum_from_occupations(
    const CorrelationBlock& block) {
  std::vector<double> q(block.q.data(), block.q.data() + block.q.size());
  return labeled_spectrum_from_occupations(q, block.mode_parity);
}

EdgeModeReport edge_mode_report(const CorrelationBlock& block) {
  const int L = block.L_A;
  // Locate the two occupations nearest 1/2.
  std::vector<int> idx(L);
  for (int i = 0; i < L; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(block.q(a) - 0.5) < std::abs(block.q(b) - 0.5);
  });
  if (L < 2 || std::abs(block.q(idx[0]) - 0.5) >= 0.2 ||
      std::abs(block.q(idx[1]) - 0.5) >= 0.2)
    throw NoEdgeModesError(
        "edge_mode_report: no occupation pair within 0.2 of 1/2");

  EdgeModeReport rep;
  int i1 = idx[0], i2 = idx[1];
  if (block.q(i1) < block.q(i2)) std::swap(i1, i2);
  rep.q1 = block.q(i1);
  rep.q2 = block.q(i2);
  rep.lambda = rep.q1 - 0.5;
  rep.eps1 = std::log(rep.q1) - std::log1p(-rep.q1);

  // The two modes are inversion eigenvectors; combine the symmetric and
  // antisymmetric ones into mirror-image edge wavefunctions.
  const Eigen::VectorXd v1 = block.modes.col(i1), v2 = block.modes.col(i2);
  const int p1 = block.mode_parity[i1], p2 = block.mode_parity[i2];
  if (p1 * p2 != -1)
    throw Error("edge_mode_report: edge pair parities are not opposite");
  const Eigen::VectorXd& vsym = (p1 == 1) ? v1 : v2;
  const Eigen::VectorXd& vanti = (p1 == 1) ? v2 : v1;
  Eigen::VectorXd left = (vsym + vanti) / std::sqrt(2.0);
  // Orient towards the left half of the block and fix the overall sign.
  const int half = L / 2;
  if (left.head(half).squaredNorm() < left.tail(L - half).squaredNorm())
    left = (vsym - vanti) / std::sqrt(2.0);
  int imax = 0;
  left.cwiseAbs().maxCoeff(&imax);
  if (left(imax) < 0.0) left = -left;
  rep.left = left;
  rep.right.resize(L);
  for (int i = 0; i < L; ++i) rep.right(i) = left(L - 1 - i);

  // Factorized description: force the edge pair to the symmetric
  // occupations 1/2 +/- lambda and compare the largest 16 eigenvalues.
  std::vector<double> q_exact = occupation_spectrum(block);
  std::vector<double> q_recon = q_exact;
  q_recon[i1] = 0.5 + rep.lambda;
  q_recon[i2] = 0.5 - rep.lambda;
  const auto top_exact = rho_spectrum_top(q_exact, 16, 0.0);
  const auto top_recon = rho_spectrum_top(q_recon, 16, 0.0);
  const std::size_t n = std::max(top_exact.size(), top_recon.size());
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = j < top_exact.size() ? top_exact[j] : 0.0;
    const double b = j < top_recon.size() ? top_recon[j] : 0.0;
    err = std::max(err, std::abs(a - b));
  }
  rep.factorization_error = err;
  return rep;
}

}  // namespace baxxz
