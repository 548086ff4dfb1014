#include "baxxz/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace baxxz {

std::vector<double> make_alpha_grid(const AlphaGridSpec& spec) {
  if (spec.count < 2 || !(spec.min > 0.0) || !(spec.max > spec.min))
    throw Error("make_alpha_grid: need count >= 2 and 0 < min < max");
  std::vector<double> a;
  a.reserve(spec.count + 2);
  const double lmin = std::log(spec.min), lmax = std::log(spec.max);
  for (int i = 0; i < spec.count; ++i)
    a.push_back(std::exp(lmin + (lmax - lmin) * i / (spec.count - 1)));
  if (spec.include_one) a.push_back(1.0);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());  // grid may hit 1 exactly
  if (spec.include_inf) a.push_back(std::numeric_limits<double>::infinity());
  return a;
}

namespace {
std::vector<double> kept(const std::vector<double>& omega, double floor) {
  std::vector<double> w;
  w.reserve(omega.size());
  double sum = 0.0;
  for (double v : omega) {
    sum += v;
    if (v >= floor) w.push_back(v);
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw Error("renyi_entropy: spectrum is not normalized (trace " +
                std::to_string(sum) + ")");
  if (w.empty()) throw Error("renyi_entropy: no eigenvalue above the floor");
  return w;
}
}  // namespace

double renyi_entropy(const std::vector<double>& omega, double alpha,
                     double floor) {
  if (!(alpha > 0.0))
    throw Error("renyi_entropy: alpha must be positive (use renyi_rank for "
                "the alpha -> 0 limit)");
  const std::vector<double> w = kept(omega, floor);
  if (std::isinf(alpha))
    return -std::log(*std::max_element(w.begin(), w.end()));
  if (std::abs(alpha - 1.0) <= tol::alpha_one_window) {
    double s = 0.0;
    for (double v : w) s -= v * std::log(v);
    return s;
  }
  // log-sum-exp over alpha * ln(omega_j).
  double tmax = -std::numeric_limits<double>::infinity();
  for (double v : w) tmax = std::max(tmax, alpha * std::log(v));
  double acc = 0.0;
  for (double v : w) acc += std::exp(alpha * std::log(v) - tmax);
  return (tmax + std::log(acc)) / (1.0 - alpha);
}

double renyi_rank(const std::vector<double>& omega, double floor) {
  std::size_t n = 0;
  for (double v : omega)
    if (v >= floor) ++n;
  if (n == 0) throw Error("renyi_rank: no eigenvalue above the floor");
  return std::log(static_cast<double>(n));
}

std::vector<double> renyi_grid_values(const std::vector<double>& omega,
                                      const std::vector<double>& alphas,
                                      double floor) {
  std::vector<double> s(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i)
    s[i] = renyi_entropy(omega, alphas[i], floor);
  return s;
}

double purity_w(const std::vector<double>& omega) {
  double sum = 0.0, sq = 0.0;
  for (double v : omega) {
    sum += v;
    sq += v * v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw Error("purity_w: spectrum is not normalized");
  return 4.0 * sq;
}

double schmidt_gap(const std::vector<double>& omega, double floor) {
  double top = -1.0, second = -1.0;
  for (double v : omega) {
    if (v > top) {
      second = top;
      top = v;
    } else if (v > second) {
      second = v;
    }
  }
  if (second < floor)
    throw Error("schmidt_gap: fewer than two eigenvalues above the floor");
  return top - second;
}

}  // namespace baxxz
