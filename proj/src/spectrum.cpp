#include "baxxz/spectrum.hpp"

#include <cmath>

namespace baxxz {

std::vector<double> EntanglementSpectrum::omegas() const {
  std::vector<double> w(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) w[i] = levels[i].omega;
  return w;
}

std::size_t EntanglementSpectrum::labeled_count() const {
  std::size_t n = 0;
  for (const auto& l : levels)
    if (l.labeled) ++n;
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> degeneracy_clusters(
    const std::vector<double>& sorted_omega, double rel_tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = sorted_omega.size();
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    // Chain neighbours: i belongs to the current cluster if it sits within
    // rel_tol of the previous value (relative to the larger magnitude).
    const bool split =
        (i == n) || std::abs(sorted_omega[i - 1] - sorted_omega[i]) >
                        rel_tol * std::max(std::abs(sorted_omega[i - 1]),
                                           std::abs(sorted_omega[i]));
    if (split) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

}  // namespace baxxz
