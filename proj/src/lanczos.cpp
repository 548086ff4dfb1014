#include "baxxz/lanczos.hpp"

#include <cmath>
#include <random>

#include "baxxz/common.hpp"

namespace baxxz {

namespace {
// Portable uniform in [-1, 1): avoids std::uniform_real_distribution, whose
// stream is not pinned by the standard.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-52 - 1.0;
}

void project_out(Eigen::VectorXd& w,
                 const std::vector<Eigen::VectorXd>& deflate) {
  for (const auto& d : deflate) w -= d.dot(w) * d;
}
}  // namespace

LanczosResult lowest_eigenpair(const SparseMat& h, const LanczosOptions& opts,
                               const std::vector<Eigen::VectorXd>& deflate) {
  const Eigen::Index dim = h.rows();
  if (dim == 0) throw Error("lowest_eigenpair: empty matrix");
  if (h.cols() != dim) throw Error("lowest_eigenpair: matrix not square");

  std::mt19937_64 rng(opts.seed);
  auto restrict = [&](Eigen::VectorXd& w) {
    if (opts.project_into) opts.project_into(w);
    project_out(w, deflate);
  };
  auto fresh_start = [&]() {
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = unit_draw(rng);
    restrict(v);
    return v;
  };

  Eigen::VectorXd v = fresh_start();
  for (int attempt = 0; v.norm() < 1e-8 && attempt < 8; ++attempt)
    v = fresh_start();
  if (v.norm() < 1e-8)
    throw Error("lowest_eigenpair: start vector vanishes after deflation");
  v.normalize();

  Eigen::Index avail = dim - static_cast<Eigen::Index>(deflate.size());
  if (avail < 1) avail = 1;
  const int m = static_cast<int>(std::min<Eigen::Index>(opts.restart_len, avail));
  Eigen::MatrixXd basis(dim, m);
  Eigen::VectorXd alpha(m), beta(m);
  LanczosResult best;
  int total = 0;

  auto ritz = [&](int built) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(alpha.head(built), beta.head(built - 1 > 0 ? built - 1 : 0),
                              Eigen::ComputeEigenvectors);
    return es;
  };
  auto explicit_pair = [&](int built, const Eigen::VectorXd& y, double theta) {
    Eigen::VectorXd x = basis.leftCols(built) * y;
    restrict(x);
    x.normalize();
    const double res = (h * x - theta * x).norm();
    if (!best.converged || res < best.residual) {
      best.value = theta;
      best.vector = x;
      best.residual = res;
      best.converged = res <= opts.tol;
    }
    return res;
  };

  while (total < opts.max_iter) {
    basis.col(0) = v;
    int built = 0;
    bool exhausted = false;
    for (int j = 0; j < m && total < opts.max_iter; ++j) {
      Eigen::VectorXd w = h * basis.col(j);
      ++total;
      ++built;
      restrict(w);
      // Two-pass full reorthogonalization; the first projection coefficient
      // on v_j is the Lanczos diagonal.
      Eigen::VectorXd c = basis.leftCols(built).transpose() * w;
      alpha(j) = c(j);
      w -= basis.leftCols(built) * c;
      c = basis.leftCols(built).transpose() * w;
      w -= basis.leftCols(built) * c;
      beta(j) = w.norm();

      const bool last = (j == m - 1) || (total >= opts.max_iter);
      const bool tiny = beta(j) < 1e-13 * std::max(1.0, std::abs(alpha(j)));
      if (tiny || last || (j + 1) % 16 == 0) {
        auto es = ritz(built);
        const Eigen::VectorXd y = es.eigenvectors().col(0);
        const double est = beta(j) * std::abs(y(built - 1));
        if (tiny || last || est <= 0.5 * opts.tol) {
          const double res = explicit_pair(built, y, es.eigenvalues()(0));
          best.iterations = total;
          if (res <= opts.tol) return best;
        }
        if (tiny) {
          exhausted = true;
          break;
        }
      }
      if (j + 1 < m) basis.col(j + 1) = w / beta(j);
    }
    if (exhausted && best.converged) return best;
    // Restart from the best Ritz vector found so far (perturb if the Krylov
    // space collapsed without converging).
    v = best.vector;
    if (exhausted) {
      for (Eigen::Index i = 0; i < dim; ++i) v(i) += 1e-8 * unit_draw(rng);
      restrict(v);
    }
    v.normalize();
  }
  if (best.converged) return best;
  throw NotConvergedError(
      "lowest_eigenpair: residual " + std::to_string(best.residual) +
      " after " + std::to_string(total) + " iterations (tol " +
      std::to_string(opts.tol) + ")");
}

}  // namespace baxxz
