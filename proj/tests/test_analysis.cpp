#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "baxxz/common.hpp"
#include "baxxz/convertibility.hpp"
#include "baxxz/renyi.hpp"
#include "baxxz/spectrum.hpp"

using namespace baxxz;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

std::vector<double> random_spectrum(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : w) {
    x = u(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}
}  // namespace

TEST_CASE("alpha grid layout") {
  AlphaGridSpec spec;
  spec.count = 10;
  spec.min = 0.1;
  spec.max = 50.0;
  const std::vector<double> g = make_alpha_grid(spec);
  REQUIRE(g.size() == 12);  // 10 interior + alpha=1 + infinity
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(g.front() == doctest::Approx(0.1));
  CHECK(std::count(g.begin(), g.end(), 1.0) == 1);
  CHECK(std::isinf(g.back()));
  // Log spacing: ratios of consecutive interior points are equal.
  CHECK(g[1] / g[0] == doctest::Approx(std::pow(500.0, 1.0 / 9)).epsilon(1e-12));

  // A grid whose interior lands on alpha = 1 exactly keeps a single copy.
  AlphaGridSpec exact;
  exact.count = 10;
  exact.min = 0.1;
  exact.max = 100.0;
  const std::vector<double> ge = make_alpha_grid(exact);
  CHECK(std::count(ge.begin(), ge.end(), 1.0) <= 1);
  CHECK(std::adjacent_find(ge.begin(), ge.end()) == ge.end());
}

TEST_CASE("Renyi entropy closed forms") {
  // Uniform spectrum: S_alpha = ln d for every alpha.
  const std::vector<double> flat(8, 0.125);
  for (double a : {0.2, 0.5, 1.0, 2.0, 50.0, kInf})
    CHECK(renyi_entropy(flat, a) == doctest::Approx(std::log(8.0)).epsilon(1e-13));

  // Two-level spectrum against hand-evaluated formulas.
  const std::vector<double> two = {0.75, 0.25};
  CHECK(renyi_entropy(two, 2.0) ==
        doctest::Approx(-std::log(0.625)).epsilon(1e-14));
  CHECK(renyi_entropy(two, 0.5) ==
        doctest::Approx(2.0 * std::log(std::sqrt(0.75) + std::sqrt(0.25)))
            .epsilon(1e-14));
  CHECK(renyi_entropy(two, 1.0) ==
        doctest::Approx(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25)))
            .epsilon(1e-14));
  CHECK(renyi_entropy(two, kInf) == doctest::Approx(-std::log(0.75)).epsilon(1e-14));
}

TEST_CASE("alpha near one takes the von Neumann branch") {
  const std::vector<double> w = {0.6, 0.3, 0.1};
  const double s1 = renyi_entropy(w, 1.0);
  CHECK(renyi_entropy(w, 1.0 + 1e-4) == s1);
  CHECK(renyi_entropy(w, 1.0 - 1e-4) == s1);
  CHECK(renyi_entropy(w, 1.0 + 0.9 * tol::alpha_one_window) == s1);
  // Just outside the window the true quotient is used: close but not equal.
  const double outside = renyi_entropy(w, 1.0 + 2e-3);
  CHECK(outside != s1);
  CHECK(outside < s1);  // monotone in alpha
  CHECK(std::abs(outside - s1) < 1e-2);
}

TEST_CASE("floor excludes numerically zero levels") {
  const std::vector<double> w = {0.7, 0.3 - 1e-15, 1e-15};
  CHECK(renyi_rank(w) == doctest::Approx(std::log(2.0)));
  // S_inf ignores the tiny level.
  CHECK(renyi_entropy(w, kInf) == doctest::Approx(-std::log(0.7)).epsilon(1e-12));
  // A spectrum of all-subfloor values has no usable levels.
  CHECK_THROWS_AS(renyi_entropy(std::vector<double>{1e-14, 1e-14}, 2.0), Error);
}

TEST_CASE("entropy guards") {
  const std::vector<double> w = {0.6, 0.4};
  CHECK_THROWS_AS(renyi_entropy(w, 0.0), Error);
  CHECK_THROWS_AS(renyi_entropy(w, -1.0), Error);
  CHECK_THROWS_AS(renyi_entropy(std::vector<double>{0.5, 0.4}, 2.0), Error);
}

TEST_CASE("grid entropies are non-increasing in alpha") {
  std::mt19937_64 rng(99);
  const std::vector<double> grid = make_alpha_grid();
  for (int t = 0; t < 20; ++t) {
    const std::vector<double> w = random_spectrum(rng, 3 + t);
    const std::vector<double> s = renyi_grid_values(w, grid);
    REQUIRE(s.size() == grid.size());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i + 1] <= s[i] + 1e-12);
  }
}

TEST_CASE("purity witness and Schmidt gap") {
  std::mt19937_64 rng(5);
  const std::vector<double> w = random_spectrum(rng, 6);
  CHECK(purity_w(w) ==
        doctest::Approx(4.0 * std::exp(-renyi_entropy(w, 2.0))).epsilon(1e-12));
  CHECK(schmidt_gap(w) == doctest::Approx(w[0] - w[1]).epsilon(1e-14));
  // Product state: W = 4, gap needs two levels.
  CHECK(purity_w({1.0}) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(schmidt_gap({1.0 - 1e-15, 1e-15}), Error);
  // Dimer fixed point: W = 1.
  CHECK(purity_w({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("degeneracy clustering") {
  const std::vector<double> w = {0.5, 0.5 - 1e-12, 0.3, 0.1, 0.1, 0.1};
  const auto clusters = degeneracy_clusters(w, 1e-10);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(clusters[1] == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(clusters[2] == std::pair<std::size_t, std::size_t>{3, 6});
}

TEST_CASE("DLC map reduces entropy differences to signs") {
  const std::vector<double> g = {0.0, 1.0};
  const std::vector<double> alphas = {0.5, 1.0, 2.0};
  const std::vector<std::vector<double>> s_at = {{1.0, 0.9, 0.8},
                                                 {1.0, 1.0, 1.0}};
  const std::vector<std::vector<double>> s_plus = {
      {1.1, 0.9 + 5e-13, 0.7},   // up, dead zone, down
      {1.0 + 2e-12, 1.0, 1.0}};  // just above the dead zone, zero, zero
  const ConvertibilityMap m = dlc_map(g, alphas, s_at, s_plus);
  REQUIRE(m.sign.size() == 2);
  CHECK(m.sign[0] == std::vector<int>{1, 0, -1});
  CHECK(m.sign[1] == std::vector<int>{1, 0, 0});
  CHECK(m.dead_zone == tol::dlc_dead_zone);
}

TEST_CASE("DLC map from spectra matches the entropy route") {
  const std::vector<double> alphas = make_alpha_grid();
  const std::vector<double> w0 = {0.7, 0.2, 0.1};
  const std::vector<double> w1 = {0.6, 0.3, 0.1};
  const ConvertibilityMap a = dlc_map_from_spectra({0.0}, alphas, {w0}, {w1});
  const ConvertibilityMap b =
      dlc_map({0.0}, alphas, {renyi_grid_values(w0, alphas)},
              {renyi_grid_values(w1, alphas)});
  CHECK(a.sign == b.sign);
  // w1 is strictly majorized by w0, so every entropy grows: uniform +1.
  for (int s : a.sign[0]) CHECK(s == 1);
}

TEST_CASE("majorization map from partial sums") {
  // Partial-sum differences: k=1 -> +0.1; k=2 -> 0 (forced saturation).
  const MajorizationMap up =
      majorization_map({0.0}, {{0.6, 0.4}}, {{0.7, 0.3}});
  CHECK(up.k_max == 2);
  CHECK(up.sign[0] == std::vector<int>{1, 0});

  // Mixed column: +0.02 at k=1, -0.04 at k=2 (both spectra sorted).
  const MajorizationMap mixed = majorization_map(
      {0.0}, {{0.50, 0.30, 0.20}}, {{0.52, 0.24, 0.24}});
  CHECK(mixed.sign[0] == std::vector<int>{1, -1, 0});

  // Unequal lengths are zero-padded to the longer spectrum.
  const MajorizationMap padded =
      majorization_map({0.0}, {{0.6, 0.4}}, {{0.5, 0.3, 0.2}});
  CHECK(padded.k_max == 3);
  CHECK(padded.sign[0] == std::vector<int>{-1, -1, 0});

  // Differences inside the dead zone collapse to zero.
  const MajorizationMap flat = majorization_map(
      {0.0}, {{0.6, 0.4}}, {{0.6 + 1e-14, 0.4 - 1e-14}});
  CHECK(flat.sign[0] == std::vector<int>{0, 0});

  // Spectra must arrive sorted.
  CHECK_THROWS_AS(majorization_map({0.0}, {{0.4, 0.6}}, {{0.6, 0.4}}), Error);
}

TEST_CASE("catalyst verdicts") {
  using V = Verdict;
  // Uniform DLC up + uniform majorization: plain convertibility.
  CHECK(catalyst_verdict({1, 1, 0}, {-1, -1, 0}).verdict == V::ConvertibleUp);
  CHECK(catalyst_verdict({-1, -1}, {1, 0}).verdict == V::ConvertibleDown);
  // Uniform DLC + mixed majorization: a catalyst is required.
  CHECK(catalyst_verdict({1, 1}, {1, -1}).verdict ==
        V::ConvertibleWithCatalystUp);
  CHECK(catalyst_verdict({0, -1}, {1, -1}).verdict ==
        V::ConvertibleWithCatalystDown);
  // Mixed DLC: not convertible in either direction.
  CHECK(catalyst_verdict({1, -1}, {-1, -1}).verdict ==
        V::NotLocallyConvertible);
  // All differences inside the dead zone: degenerate up-verdict.
  const VerdictReport flat = catalyst_verdict({0, 0}, {0, 0});
  CHECK(flat.verdict == V::ConvertibleUp);
  CHECK(flat.degenerate);
  CHECK(!catalyst_verdict({1, 0}, {0, -1}).degenerate);
  // Counters.
  const VerdictReport r = catalyst_verdict({1, -1, 0, 1}, {1, 1, -1, 0});
  CHECK(r.dlc_pos == 2);
  CHECK(r.dlc_neg == 1);
  CHECK(r.maj_pos == 2);
  CHECK(r.maj_neg == 1);
}

TEST_CASE("verdict names are stable") {
  CHECK(to_string(Verdict::ConvertibleUp) == "convertible-up");
  CHECK(to_string(Verdict::ConvertibleDown) == "convertible-down");
  CHECK(to_string(Verdict::ConvertibleWithCatalystUp) == "catalyst-up");
  CHECK(to_string(Verdict::ConvertibleWithCatalystDown) == "catalyst-down");
  CHECK(to_string(Verdict::NotLocallyConvertible) == "not-convertible");
}

TEST_CASE("Schur consistency between the two maps") {
  // Uniformly positive majorization: the later spectrum majorizes, so no
  // entropy may strictly grow.
  CHECK(schur_consistent({-1, -1, 0}, {1, 1, 0}));
  CHECK(!schur_consistent({-1, 1, 0}, {1, 1, 0}));
  // Uniformly negative majorization forbids strictly negative DLC cells.
  CHECK(schur_consistent({1, 1}, {-1, 0}));
  CHECK(!schur_consistent({-1, 1}, {-1, 0}));
  // A mixed majorization column imposes no constraint.
  CHECK(schur_consistent({1, -1}, {1, -1}));
  // No strict majorization information: nothing to check.
  CHECK(schur_consistent({1, -1}, {0, 0}));
}

TEST_CASE("majorization and entropies agree on constructed pairs") {
  // For spectra ordered by majorization, every Renyi entropy must move the
  // opposite way; generate nested mixtures w(t) = (1-t) w + t uniform.
  std::mt19937_64 rng(17);
  const std::vector<double> alphas = make_alpha_grid();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> w = random_spectrum(rng, 8);
    const double t = 0.2;
    std::vector<double> mixed(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      mixed[i] = (1.0 - t) * w[i] + t / static_cast<double>(w.size());
    // mixed is strictly majorized by w (closer to uniform).
    const MajorizationMap mm = majorization_map({0.0}, {w}, {mixed});
    for (std::size_t k = 0; k + 1 < mm.k_max; ++k) CHECK(mm.sign[0][k] <= 0);
    const ConvertibilityMap dm =
        dlc_map_from_spectra({0.0}, alphas, {w}, {mixed});
    for (int s : dm.sign[0]) CHECK(s >= 0);
    CHECK(schur_consistent(dm.sign[0], mm.sign[0]));
  }
}
