#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "baxxz/common.hpp"

namespace baxxz {

// Second central difference of the ground-state energy density:
//   chi(g) = -[e0(g-eps) - 2 e0(g) + e0(g+eps)] / eps^2.
double energy_curvature(double e_minus, double e_center, double e_plus,
                        double epsilon);

// Curvature curve from three pre-tabulated energy columns on a shared grid.
std::vector<double> energy_curvature_curve(const std::vector<double>& e_minus,
                                           const std::vector<double>& e_center,
                                           const std::vector<double>& e_plus,
                                           double epsilon);

struct GridExtremum {
  double g = 0.0;       // refined abscissa
  double value = 0.0;   // refined ordinate
  std::size_t index = 0;  // grid argmax the refinement started from
};

// Locate the maximum of y over the grid g: grid argmax plus one parabolic
// refinement through the three bracketing points.  Throws
// BoundaryExtremumError when the argmax sits on either end of the grid.
GridExtremum locate_maximum(const std::vector<double>& g,
                            const std::vector<double>& y);

// Locate a stationary point of y: first sign change of the forward
// difference, refined by linear interpolation of the discrete derivative.
// Throws NoSignChangeError when the derivative never changes sign.
GridExtremum locate_stationary(const std::vector<double>& g,
                               const std::vector<double>& y);

struct PowerLawFit {
  double g_c = 0.0;       // extrapolated infinite-size location
  double amplitude = 0.0; // a in g*(N) = g_c + a N^(-theta)
  double theta = 0.0;     // shift exponent (> 0)
  double theta_inverse = 0.0;
  double residual_norm = 0.0;  // RMS residual of the fit
  double g_c_stderr = 0.0;     // linearized 1-sigma error on g_c
  int iterations = 0;
  bool converged = false;
};

// Fit g*(N) = g_c + a N^(-theta) by Levenberg-Marquardt with theta = exp(t)
// to keep the exponent positive.  Needs at least three sizes.
PowerLawFit fit_shift_power_law(const std::vector<int>& sizes,
                                const std::vector<double>& g_star,
                                int max_iter = 200, double tol = 1e-12);

}  // namespace baxxz
