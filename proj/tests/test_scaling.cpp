#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "baxxz/common.hpp"
#include "baxxz/scaling.hpp"

using namespace baxxz;

namespace {
std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}
}  // namespace

TEST_CASE("curvature of a quadratic energy is exact") {
  // e(g) = -(a g^2 + b g + c)  =>  chi = -e'' = 2a for any step.
  const double a = 0.7, b = -1.3, c = 0.2;
  auto e = [&](double g) { return -(a * g * g + b * g + c); };
  for (double g : {0.0, 1.5, -2.0})
    for (double eps : {1e-2, 5e-3, 1e-3})
      CHECK(energy_curvature(e(g - eps), e(g), e(g + eps), eps) ==
            doctest::Approx(2 * a).epsilon(1e-9));
}

TEST_CASE("curvature of a quartic carries the expected truncation error") {
  // e(g) = -g^4 / 12: chi = g^2 exactly; the stencil adds eps^2 g / ... ->
  // second difference of -g^4/12 is g^2 + eps^2/6.
  auto e = [](double g) { return -std::pow(g, 4) / 12.0; };
  const double g = 1.3, eps = 1e-2;
  const double chi = energy_curvature(e(g - eps), e(g), e(g + eps), eps);
  CHECK(chi == doctest::Approx(g * g + eps * eps / 6.0).epsilon(1e-9));
}

TEST_CASE("curvature curve matches pointwise evaluation") {
  const std::vector<double> em = {1.0, 2.0, 3.0};
  const std::vector<double> ec = {1.1, 2.0, 2.9};
  const std::vector<double> ep = {1.3, 2.1, 2.8};
  const std::vector<double> curve = energy_curvature_curve(em, ec, ep, 0.1);
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(curve[i] ==
          doctest::Approx(energy_curvature(em[i], ec[i], ep[i], 0.1)));
}

TEST_CASE("maximum location with parabolic refinement") {
  // A sampled parabola is refined to its exact vertex.
  const std::vector<double> g = linspace(0.0, 4.0, 21);
  std::vector<double> y;
  for (double x : g) y.push_back(3.0 - (x - 1.73) * (x - 1.73));
  const GridExtremum ext = locate_maximum(g, y);
  CHECK(ext.g == doctest::Approx(1.73).epsilon(1e-12));
  CHECK(ext.value == doctest::Approx(3.0).epsilon(1e-12));

  // A smooth non-parabolic peak lands within O(step^2) of the true maximum.
  std::vector<double> bump;
  for (double x : g) bump.push_back(std::exp(-(x - 2.03) * (x - 2.03) / 0.5));
  const GridExtremum b = locate_maximum(g, bump);
  CHECK(std::abs(b.g - 2.03) < 0.02);
  CHECK(b.value >= *std::max_element(bump.begin(), bump.end()));
}

TEST_CASE("maximum on the grid edge is refused") {
  const std::vector<double> g = linspace(0.0, 1.0, 5);
  const std::vector<double> rising = {0.0, 0.1, 0.2, 0.3, 0.4};
  CHECK_THROWS_AS(locate_maximum(g, rising), BoundaryExtremumError);
  const std::vector<double> falling = {0.4, 0.3, 0.2, 0.1, 0.0};
  CHECK_THROWS_AS(locate_maximum(g, falling), BoundaryExtremumError);
}

TEST_CASE("stationary point from the discrete derivative") {
  // y = (g - 1.7)^2: midpoint slopes are linear, the interpolated root exact.
  const std::vector<double> g = linspace(0.0, 4.0, 17);
  std::vector<double> y;
  for (double x : g) y.push_back((x - 1.7) * (x - 1.7));
  const GridExtremum st = locate_stationary(g, y);
  CHECK(st.g == doctest::Approx(1.7).epsilon(1e-12));

  std::vector<double> monotone;
  for (double x : g) monotone.push_back(2.0 * x);
  CHECK_THROWS_AS(locate_stationary(g, monotone), NoSignChangeError);
}

TEST_CASE("power-law fit recovers exact synthetic data") {
  const double g_c = 3.5, a = 2.1, theta = 1.3;
  const std::vector<int> sizes = {8, 12, 16, 20, 24};
  std::vector<double> gstar;
  for (int n : sizes) gstar.push_back(g_c + a * std::pow(n, -theta));
  const PowerLawFit fit = fit_shift_power_law(sizes, gstar);
  CHECK(fit.converged);
  CHECK(fit.g_c == doctest::Approx(g_c).epsilon(1e-8));
  CHECK(fit.amplitude == doctest::Approx(a).epsilon(1e-6));
  CHECK(fit.theta == doctest::Approx(theta).epsilon(1e-6));
  CHECK(fit.theta_inverse == doctest::Approx(1.0 / theta).epsilon(1e-6));
  CHECK(fit.residual_norm < 1e-10);
  CHECK(fit.g_c_stderr >= 0.0);
}

TEST_CASE("power-law fit flips sign with the amplitude") {
  const std::vector<int> sizes = {8, 12, 16, 20};
  std::vector<double> gstar;
  for (int n : sizes) gstar.push_back(2.2 - 5.0 * std::pow(n, -0.8));
  const PowerLawFit fit = fit_shift_power_law(sizes, gstar);
  CHECK(fit.converged);
  CHECK(fit.g_c == doctest::Approx(2.2).epsilon(1e-7));
  CHECK(fit.amplitude == doctest::Approx(-5.0).epsilon(1e-5));
  CHECK(fit.theta == doctest::Approx(0.8).epsilon(1e-5));
}

TEST_CASE("power-law fit needs three sizes") {
  CHECK_THROWS_AS(fit_shift_power_law({8, 12}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(fit_shift_power_law({8, 12, 16}, {1.0, 2.0}), Error);
}

TEST_CASE("power-law fit is robust to small noise") {
  // Monte-Carlo over frozen draws: peak locations jittered by up to 5e-3,
  // about the refinement error of the real pipeline.
  const double g_c = 3.5, a = 2.1, theta = 1.3;
  const std::vector<int> sizes = {8, 12, 16, 20};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> jitter(-5e-3, 5e-3);
  int converged = 0;
  int inside = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> gstar;
    for (int n : sizes)
      gstar.push_back(g_c + a * std::pow(n, -theta) + jitter(rng));
    const PowerLawFit fit = fit_shift_power_law(sizes, gstar);
    if (fit.converged) ++converged;
    if (std::abs(fit.g_c - g_c) < 0.25) ++inside;
    CHECK(fit.theta > 0.0);
  }
  CHECK(converged == trials);
  CHECK(inside >= trials * 9 / 10);
}
