#include "baxxz/scaling.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace baxxz {

double energy_curvature(double e_minus, double e_center, double e_plus,
                        double epsilon) {
  if (!(epsilon > 0.0)) throw Error("energy_curvature: epsilon must be > 0");
  return -(e_minus - 2.0 * e_center + e_plus) / (epsilon * epsilon);
}

std::vector<double> energy_curvature_curve(const std::vector<double>& e_minus,
                                           const std::vector<double>& e_center,
                                           const std::vector<double>& e_plus,
                                           double epsilon) {
  if (e_minus.size() != e_center.size() || e_plus.size() != e_center.size())
    throw Error("energy_curvature_curve: column length mismatch");
  std::vector<double> chi(e_center.size());
  for (std::size_t i = 0; i < chi.size(); ++i)
    chi[i] = energy_curvature(e_minus[i], e_center[i], e_plus[i], epsilon);
  return chi;
}

GridExtremum locate_maximum(const std::vector<double>& g,
                            const std::vector<double>& y) {
  if (g.size() != y.size()) throw Error("locate_maximum: grid/value mismatch");
  if (g.size() < 3) throw Error("locate_maximum: need at least 3 grid points");
  std::size_t im = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[im]) im = i;
  if (im == 0 || im + 1 == y.size())
    throw BoundaryExtremumError(
        "maximum sits on the edge of the sweep window; widen the grid");
  // Parabola through the three bracketing points (possibly uneven spacing).
  const double x0 = g[im - 1], x1 = g[im], x2 = g[im + 1];
  const double y0 = y[im - 1], y1 = y[im], y2 = y[im + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double c2 = (d12 - d01) / (x2 - x0);  // half the second derivative
  GridExtremum ext;
  ext.index = im;
  if (c2 >= 0.0) {  // degenerate/flat triple: keep the grid point
    ext.g = x1;
    ext.value = y1;
    return ext;
  }
  ext.g = 0.5 * (x0 + x1) - 0.5 * d01 / c2;
  const double t = ext.g;
  ext.value = y0 + d01 * (t - x0) + c2 * (t - x0) * (t - x1);
  return ext;
}

GridExtremum locate_stationary(const std::vector<double>& g,
                               const std::vector<double>& y) {
  if (g.size() != y.size())
    throw Error("locate_stationary: grid/value mismatch");
  if (g.size() < 3)
    throw Error("locate_stationary: need at least 3 grid points");
  const std::size_t nd = g.size() - 1;
  std::vector<double> slope(nd), mid(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    slope[i] = (y[i + 1] - y[i]) / (g[i + 1] - g[i]);
    mid[i] = 0.5 * (g[i] + g[i + 1]);
  }
  for (std::size_t i = 0; i + 1 < nd; ++i) {
    if (slope[i] == 0.0) {
      GridExtremum ext;
      ext.index = i;
      ext.g = mid[i];
      ext.value = 0.5 * (y[i] + y[i + 1]);
      return ext;
    }
    if (slope[i] * slope[i + 1] < 0.0) {
      const double t = slope[i] / (slope[i] - slope[i + 1]);
      GridExtremum ext;
      ext.index = i + 1;  // grid point between the two slope samples
      ext.g = mid[i] + t * (mid[i + 1] - mid[i]);
      ext.value = y[i + 1];
      return ext;
    }
  }
  throw NoSignChangeError(
      "discrete derivative keeps one sign across the sweep window");
}

PowerLawFit fit_shift_power_law(const std::vector<int>& sizes,
                                const std::vector<double>& g_star,
                                int max_iter, double tol) {
  const std::size_t n = sizes.size();
  if (n != g_star.size()) throw Error("fit_shift_power_law: length mismatch");
  if (n < 3) throw Error("fit_shift_power_law: need at least 3 sizes");

  // Parameters p = (g_c, a, t) with theta = exp(t); residual
  //   r_i = g_c + a N_i^(-exp(t)) - g*, minimized in least squares.
  std::size_t i_max = 0, i_second = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (sizes[i] > sizes[i_max]) i_max = i;
  for (std::size_t i = 0; i < n; ++i)
    if (i != i_max && (i_second == i_max || sizes[i] > sizes[i_second]))
      i_second = i;

  Eigen::Vector3d p;
  p(0) = g_star[i_max];
  p(2) = 0.0;  // theta = 1
  p(1) = (g_star[i_second] - g_star[i_max]) * sizes[i_second];
  if (p(1) == 0.0) p(1) = 1e-3;

  auto residuals = [&](const Eigen::Vector3d& q, Eigen::VectorXd& r,
                       Eigen::MatrixXd* jac) {
    const double theta = std::exp(q(2));
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double lnN = std::log(static_cast<double>(sizes[i]));
      const double basis = std::exp(-theta * lnN);  // N^(-theta)
      r(static_cast<Eigen::Index>(i)) = q(0) + q(1) * basis - g_star[i];
      if (jac) {
        (*jac)(static_cast<Eigen::Index>(i), 0) = 1.0;
        (*jac)(static_cast<Eigen::Index>(i), 1) = basis;
        (*jac)(static_cast<Eigen::Index>(i), 2) =
            -q(1) * basis * lnN * theta;  // d/dt with theta = exp(t)
      }
    }
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  residuals(p, r, &J);
  double cost = r.squaredNorm();
  double lambda = 1e-3;

  PowerLawFit fit;
  for (int it = 0; it < max_iter; ++it) {
    fit.iterations = it + 1;
    Eigen::Matrix3d JtJ = J.transpose() * J;
    Eigen::Vector3d Jtr = J.transpose() * r;
    // First-order optimality: the gradient (2 J^T r) vanishes at a minimum.
    if (Jtr.lpNorm<Eigen::Infinity>() < 1e-12 * (1.0 + cost)) {
      fit.converged = true;
      break;
    }
    Eigen::Matrix3d damped = JtJ;
    for (int d = 0; d < 3; ++d)
      damped(d, d) += lambda * std::max(JtJ(d, d), 1e-12);
    Eigen::Vector3d step = damped.ldlt().solve(-Jtr);
    if (!step.allFinite()) {
      lambda *= 10.0;
      continue;
    }
    Eigen::Vector3d trial = p + step;
    trial(2) = std::clamp(trial(2), -8.0, 8.0);  // theta in [e^-8, e^8]
    Eigen::VectorXd rt;
    residuals(trial, rt, nullptr);
    const double trial_cost = rt.squaredNorm();
    // Accept ties at roundoff so stagnation registers as convergence
    // instead of driving the damping to its ceiling.
    if (trial_cost <= cost * (1.0 + 1e-15)) {
      const double rel = std::abs(cost - trial_cost) /
                         std::max(cost, 1e-300);
      p = trial;
      residuals(p, r, &J);
      cost = std::min(cost, trial_cost);
      lambda = std::max(lambda * 0.3, 1e-12);
      if (step.norm() < tol * (1.0 + p.norm()) || rel < tol) {
        fit.converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) {
        // Damping exhausted: report success only if we are actually at a
        // stationary point.
        fit.converged = Jtr.lpNorm<Eigen::Infinity>() < 1e-8 * (1.0 + cost);
        break;
      }
    }
  }

  fit.g_c = p(0);
  fit.amplitude = p(1);
  fit.theta = std::exp(p(2));
  fit.theta_inverse = 1.0 / fit.theta;
  fit.residual_norm = std::sqrt(cost / static_cast<double>(n));

  // Linearized covariance: sigma^2 (J^T J)^(-1) with sigma^2 from the
  // residual sum over the degrees of freedom (guard dof >= 1).
  const double dof = std::max<double>(1.0, static_cast<double>(n) - 3.0);
  const double sigma2 = cost / dof;
  Eigen::Matrix3d JtJ = J.transpose() * J;
  Eigen::Matrix3d cov = JtJ.completeOrthogonalDecomposition().pseudoInverse();
  const double var = sigma2 * cov(0, 0);
  fit.g_c_stderr = var > 0.0 ? std::sqrt(var) : 0.0;
  return fit;
}

}  // namespace baxxz
