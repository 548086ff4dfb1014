// Differential local convertibility (DLC) and majorization along a sweep.
//
// At each sweep value g the forward difference S_alpha(g + eps) - S_alpha(g)
// is reduced to a sign; a column that is non-negative for every alpha means
// the ground state at g can be converted to the one at g + eps by local
// operations assisted by a catalyst ("up" direction; a non-positive column
// allows the reverse). Whether a catalyst is needed is read off the
// majorization map M(k) = sign of the forward difference of the partial sums
// sum_{j<=k} omega_j: a uniform-sign M column certifies plain local
// convertibility, a mixed one requires the catalyst.
#pragma once

#include <string>
#include <vector>

#include "baxxz/common.hpp"

namespace baxxz {

struct ConvertibilityMap {
  std::vector<double> g;       // sweep values
  std::vector<double> alphas;  // alpha grid
  std::vector<std::vector<int>> sign;  // sign[i][j] for (g_i, alpha_j)
  double dead_zone = tol::dlc_dead_zone;
};

// From precomputed entropy tables s_at[i][j] = S_{alpha_j}(g_i) and
// s_plus[i][j] = S_{alpha_j}(g_i + eps). Differences smaller than dead_zone
// map to 0.
ConvertibilityMap dlc_map(const std::vector<double>& g,
                          const std::vector<double>& alphas,
                          const std::vector<std::vector<double>>& s_at,
                          const std::vector<std::vector<double>>& s_plus,
                          double dead_zone = tol::dlc_dead_zone);

// Convenience overload computing the entropies from spectra.
ConvertibilityMap dlc_map_from_spectra(
    const std::vector<double>& g, const std::vector<double>& alphas,
    const std::vector<std::vector<double>>& omega_at,
    const std::vector<std::vector<double>>& omega_plus,
    double dead_zone = tol::dlc_dead_zone);

struct MajorizationMap {
  std::vector<double> g;
  std::size_t k_max = 0;               // common padded spectrum length
  std::vector<std::vector<int>> sign;  // sign[i][k]; sign[i][k_max-1] = 0
  double dead_zone = tol::eigenvalue_floor;
};

// Spectra are sorted non-increasing, padded with exact zeros to the common
// length; the last k is forced to 0 (both partial sums saturate the trace).
MajorizationMap majorization_map(
    const std::vector<double>& g,
    const std::vector<std::vector<double>>& omega_at,
    const std::vector<std::vector<double>>& omega_plus,
    double dead_zone = tol::eigenvalue_floor);

enum class Verdict {
  ConvertibleUp,               // toward larger g, no catalyst needed
  ConvertibleDown,             // toward smaller g, no catalyst needed
  ConvertibleWithCatalystUp,
  ConvertibleWithCatalystDown,
  NotLocallyConvertible,       // DLC column carries both strict signs
};

std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::ConvertibleUp;
  int dlc_pos = 0, dlc_neg = 0;  // strict sign counts in the DLC column
  int maj_pos = 0, maj_neg = 0;  // strict sign counts in the M column
  bool degenerate = false;       // DLC column carried no strict sign at all
};

// Combines one DLC column with the majorization column at the same g.
VerdictReport catalyst_verdict(const std::vector<int>& dlc_column,
                               const std::vector<int>& maj_column);

// Schur-concavity consistency between the two maps at one sweep point: a
// strictly uniform majorization column of sign s forbids any DLC cell of the
// same sign s (partial sums growing along +g means the spectrum at g is
// majorized by the one at g + eps, so every Renyi entropy is non-increasing).
bool schur_consistent(const std::vector<int>& dlc_column,
                      const std::vector<int>& maj_column);

}  // namespace baxxz
