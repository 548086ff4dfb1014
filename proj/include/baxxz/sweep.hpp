#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baxxz/renyi.hpp"
#include "baxxz/table.hpp"

namespace baxxz {

enum class Backend { ExactDiag, FreeFermion, FreeFermionThermo };
std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

// How much each grid point computes (and what gets cached):
//   Energy  - ground energies at g-eps, g, g+eps only.
//   Spectra - Energy plus block spectra at g and g+eps.
//   Diag    - Spectra plus the sector gap (exact-diag backend only).
enum class Payload { Energy, Spectra, Diag };
std::string to_string(Payload p);

struct SweepConfig {
  int schema_version = 1;
  std::string label;           // free-form tag carried into output tables
  Backend backend = Backend::ExactDiag;
  std::string axis = "Delta";  // swept coupling: "Delta" or "delta"
  double fixed = 0.0;          // the coupling held constant
  double sweep_min = 0.0;
  double sweep_max = 1.0;
  double sweep_step = 0.1;
  std::vector<int> sizes = {8};   // chain lengths N; ignored by the
                                  // thermodynamic backend (reported as N=0)
  std::vector<int> blocks = {4};  // block sizes L_A
  AlphaGridSpec alphas;
  double epsilon = 5e-3;  // forward-difference step along the sweep axis
  int m_eff = 4096;       // quadrature size of the thermodynamic backend
  int spectrum_cap = 1024;  // stored/reconstructed levels per spectrum
  std::uint64_t seed = 0;
  int workers = 1;
  bool use_cache = true;
  std::string cache_dir;  // empty: $BAXXZ_CACHE_DIR or <out_dir>/cache
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json

  void validate() const;
  std::vector<double> sweep_values() const;
  std::vector<double> alpha_grid() const;
};

SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::string& path);
std::string sweep_config_to_json(const SweepConfig& cfg);

// Everything computed at one grid point.  Exact-diag points store density-
// matrix eigenvalues directly; free-fermion points store the mode
// occupations q (compact and exact), from which spectra and entropies are
// reconstructed at merge time.
struct EvalRecord {
  bool ok = false;
  std::string error;
  double e0_minus = 0.0, e0_center = 0.0, e0_plus = 0.0;
  double gap = -1.0;  // sector gap (ED) or single-particle gap (FF); <0 if
                      // not computed
  bool quasi_degenerate = false;
  double trace_center = 1.0;
  std::vector<double> omega_center, omega_plus;  // ED spectra, desc
  std::vector<int> sz_center, parity_center, labeled_center;
  std::vector<double> q_center, q_plus;  // FF occupations, ascending
  std::vector<int> q_parity_center;

  std::string to_json() const;
  static EvalRecord from_json(const std::string& text);
};

struct PointResult {
  int N = 0;  // 0 marks the thermodynamic backend
  int L_A = 0;
  double g = 0.0;
  EvalRecord rec;
};

struct SweepRun {
  SweepConfig config;
  Payload payload = Payload::Spectra;
  std::vector<PointResult> points;  // lexicographic in (N, L_A, g)
  std::size_t evaluated = 0;        // points actually computed
  std::size_t cache_hits = 0;
};

SweepRun run_sweep(const SweepConfig& cfg, Payload payload = Payload::Spectra);

// Block spectrum of a record in non-increasing order: stored eigenvalues for
// exact-diag records, best-first reconstruction from occupations (at most
// `cap` levels) for free-fermion records.
std::vector<double> record_spectrum(const EvalRecord& rec, bool plus, int cap);

// Renyi entropies on the alpha grid: the occupation formula (exact, no
// truncation) for free-fermion records, floored eigenvalue sums for
// exact-diag records.
std::vector<double> record_entropies(const EvalRecord& rec, bool plus,
                                     const std::vector<double>& alphas);

// Merge-side table builders (deterministic row order).
Table observables_table(const SweepRun& run);
Table dlc_table(const SweepRun& run);
Table majorization_table(const SweepRun& run);
Table verdicts_table(const SweepRun& run);
Table spectrum_table(const SweepRun& run);

// Serialize `t` to <out_dir>/<stem>.<csv|json> per cfg.format; returns the
// path written.
std::string emit_table(const Table& t, const SweepConfig& cfg,
                       const std::string& stem);

}  // namespace baxxz
