#include "baxxz/convertibility.hpp"

#include <algorithm>
#include <cmath>

#include "baxxz/renyi.hpp"

namespace baxxz {

namespace {
int dead_zone_sign(double diff, double dead_zone) {
  if (std::abs(diff) < dead_zone) return 0;
  return diff > 0.0 ? 1 : -1;
}
}  // namespace

ConvertibilityMap dlc_map(const std::vector<double>& g,
                          const std::vector<double>& alphas,
                          const std::vector<std::vector<double>>& s_at,
                          const std::vector<std::vector<double>>& s_plus,
                          double dead_zone) {
  if (s_at.size() != g.size() || s_plus.size() != g.size())
    throw Error("dlc_map: entropy tables do not match the sweep grid");
  ConvertibilityMap map;
  map.g = g;
  map.alphas = alphas;
  map.dead_zone = dead_zone;
  map.sign.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (s_at[i].size() != alphas.size() || s_plus[i].size() != alphas.size())
      throw Error("dlc_map: entropy row does not match the alpha grid");
    map.sign[i].resize(alphas.size());
    for (std::size_t j = 0; j < alphas.size(); ++j)
      map.sign[i][j] = dead_zone_sign(s_plus[i][j] - s_at[i][j], dead_zone);
  }
  return map;
}

ConvertibilityMap dlc_map_from_spectra(
    const std::vector<double>& g, const std::vector<double>& alphas,
    const std::vector<std::vector<double>>& omega_at,
    const std::vector<std::vector<double>>& omega_plus, double dead_zone) {
  if (omega_at.size() != g.size() || omega_plus.size() != g.size())
    throw Error("dlc_map_from_spectra: spectra do not match the sweep grid");
  std::vector<std::vector<double>> s_at(g.size()), s_plus(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    s_at[i] = renyi_grid_values(omega_at[i], alphas);
    s_plus[i] = renyi_grid_values(omega_plus[i], alphas);
  }
  return dlc_map(g, alphas, s_at, s_plus, dead_zone);
}

MajorizationMap majorization_map(
    const std::vector<double>& g,
    const std::vector<std::vector<double>>& omega_at,
    const std::vector<std::vector<double>>& omega_plus, double dead_zone) {
  if (omega_at.size() != g.size() || omega_plus.size() != g.size())
    throw Error("majorization_map: spectra do not match the sweep grid");
  std::size_t k_max = 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    k_max = std::max(k_max, omega_at[i].size());
    k_max = std::max(k_max, omega_plus[i].size());
  }
  MajorizationMap map;
  map.g = g;
  map.k_max = k_max;
  map.dead_zone = dead_zone;
  map.sign.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& wa = omega_at[i];
    const auto& wb = omega_plus[i];
    for (std::size_t k = 1; k < wa.size(); ++k)
      if (wa[k] > wa[k - 1] + 1e-12)
        throw Error("majorization_map: spectrum not sorted non-increasing");
    for (std::size_t k = 1; k < wb.size(); ++k)
      if (wb[k] > wb[k - 1] + 1e-12)
        throw Error("majorization_map: spectrum not sorted non-increasing");
    map.sign[i].resize(k_max);
    double ca = 0.0, cb = 0.0;
    for (std::size_t k = 0; k < k_max; ++k) {
      ca += k < wa.size() ? wa[k] : 0.0;  // pad with exact zeros
      cb += k < wb.size() ? wb[k] : 0.0;
      map.sign[i][k] = dead_zone_sign(cb - ca, dead_zone);
    }
    map.sign[i][k_max - 1] = 0;  // both partial sums saturate the trace
  }
  return map;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConvertibleUp: return "convertible-up";
    case Verdict::ConvertibleDown: return "convertible-down";
    case Verdict::ConvertibleWithCatalystUp: return "catalyst-up";
    case Verdict::ConvertibleWithCatalystDown: return "catalyst-down";
    case Verdict::NotLocallyConvertible: return "not-convertible";
  }
  return "?";
}

VerdictReport catalyst_verdict(const std::vector<int>& dlc_column,
                               const std::vector<int>& maj_column) {
  VerdictReport r;
  for (int s : dlc_column) {
    if (s > 0) ++r.dlc_pos;
    if (s < 0) ++r.dlc_neg;
  }
  for (int s : maj_column) {
    if (s > 0) ++r.maj_pos;
    if (s < 0) ++r.maj_neg;
  }
  if (r.dlc_pos > 0 && r.dlc_neg > 0) {
    r.verdict = Verdict::NotLocallyConvertible;
    return r;
  }
  const bool up = r.dlc_pos > 0 || (r.dlc_pos == 0 && r.dlc_neg == 0);
  r.degenerate = r.dlc_pos == 0 && r.dlc_neg == 0;
  const bool uniform_maj = r.maj_pos == 0 || r.maj_neg == 0;
  if (uniform_maj)
    r.verdict = up ? Verdict::ConvertibleUp : Verdict::ConvertibleDown;
  else
    r.verdict = up ? Verdict::ConvertibleWithCatalystUp
                   : Verdict::ConvertibleWithCatalystDown;
  return r;
}

bool schur_consistent(const std::vector<int>& dlc_column,
                      const std::vector<int>& maj_column) {
  int pos = 0, neg = 0;
  for (int s : maj_column) {
    if (s > 0) ++pos;
    if (s < 0) ++neg;
  }
  int forbidden = 0;
  if (pos > 0 && neg == 0) forbidden = 1;
  if (neg > 0 && pos == 0) forbidden = -1;
  if (forbidden == 0) return true;  // mixed or all-zero: nothing to check
  return std::none_of(dlc_column.begin(), dlc_column.end(),
                      [&](int s) { return s == forbidden; });
}

}  // namespace baxxz
