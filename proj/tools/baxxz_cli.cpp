// Command-line front end: sweeps, convertibility/majorization maps, spectra,
// scaling fits, the free-fermion phase diagram, recipe emission, and the
// built-in validation suite.
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "acceptance/acceptance_checks.hpp"
#include "baxxz/convertibility.hpp"
#include "baxxz/free_fermion.hpp"
#include "baxxz/recipes.hpp"
#include "baxxz/scaling.hpp"
#include "baxxz/sweep.hpp"

namespace fs = std::filesystem;
using namespace baxxz;

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  std::string format;
  int workers = 0;       // 0: keep config value
  bool no_cache = false;
  long long seed = -1;   // <0: keep config value
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required = true) {
  auto* opt = cmd->add_option("--config", o.config_path,
                              "sweep configuration file (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--out", o.out, "output directory (overrides config)");
  cmd->add_option("--workers", o.workers,
                  "worker thread count (overrides config)");
  cmd->add_flag("--no-cache", o.no_cache, "disable the evaluation cache");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", o.seed, "solver seed (overrides config)");
}

SweepConfig load_config(const Overrides& o) {
  SweepConfig cfg = load_sweep_config(o.config_path);
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  if (o.workers > 0) cfg.workers = o.workers;
  if (o.no_cache) cfg.use_cache = false;
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  cfg.validate();
  return cfg;
}

void report_run(const SweepRun& run, const std::vector<std::string>& paths) {
  std::printf("points %zu, evaluated %zu, cache hits %zu\n",
              run.points.size(), run.evaluated, run.cache_hits);
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
}

// ---- scaling pipeline -----------------------------------------------------

void run_scaling(const SweepConfig& cfg) {
  SweepRun run = run_sweep(cfg, Payload::Spectra);
  std::vector<std::string> paths;
  paths.push_back(emit_table(observables_table(run), cfg, "curves"));

  // Pseudo-critical points per (N, L_A) and observable kind.
  Table pc;
  pc.columns = {"backend", "label", "axis", "fixed", "N",     "L_A",
                "kind",    "g_star", "value", "ok",  "error"};
  struct PcRow {
    std::string kind;
    int N, L_A;
    double g_star;
    bool ok;
  };
  std::vector<PcRow> pc_rows;

  // Group points by (N, L_A); lexicographic order is already in place.
  std::size_t i = 0;
  while (i < run.points.size()) {
    const int N = run.points[i].N, L = run.points[i].L_A;
    std::vector<double> g, s2, xi0, chi;
    const std::vector<double> a = {2.0,
                                   std::numeric_limits<double>::infinity()};
    for (; i < run.points.size() && run.points[i].N == N &&
           run.points[i].L_A == L;
         ++i) {
      const auto& p = run.points[i];
      if (!p.rec.ok) continue;
      const std::vector<double> s = record_entropies(p.rec, false, a);
      g.push_back(p.g);
      s2.push_back(s[0]);
      xi0.push_back(s[1]);
      chi.push_back(energy_curvature(p.rec.e0_minus, p.rec.e0_center,
                                     p.rec.e0_plus, cfg.epsilon));
    }
    auto add_pc = [&](const std::string& kind, const std::vector<double>& y,
                      bool stationary) {
      auto& row = pc.add_row();
      row[0] = to_string(cfg.backend);
      row[1] = cfg.label;
      row[2] = cfg.axis;
      row[3] = cfg.fixed;
      row[4] = static_cast<std::int64_t>(N);
      row[5] = static_cast<std::int64_t>(L);
      row[6] = kind;
      try {
        const GridExtremum ext =
            stationary ? locate_stationary(g, y) : locate_maximum(g, y);
        row[7] = ext.g;
        row[8] = ext.value;
        row[9] = static_cast<std::int64_t>(1);
        row[10] = std::string();
        pc_rows.push_back({kind, N, L, ext.g, true});
      } catch (const std::exception& e) {
        row[9] = static_cast<std::int64_t>(0);
        row[10] = std::string(e.what());
        pc_rows.push_back({kind, N, L, 0.0, false});
      }
    };
    if (g.size() >= 3) {
      add_pc("s2", s2, false);
      add_pc("xi0", xi0, true);
      add_pc("chi", chi, false);
    }
  }
  paths.push_back(emit_table(pc, cfg, "pseudo_critical"));

  // Extrapolate g*(N) per (kind, L_A) across sizes.
  Table ex;
  ex.columns = {"backend",  "label",        "axis",       "fixed",
                "L_A",      "kind",         "n_sizes",    "g_c",
                "theta",    "theta_inverse", "amplitude", "residual_norm",
                "g_c_stderr", "iterations",  "converged", "ok",
                "error"};
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& r : pc_rows) {
    const std::pair<std::string, int> key{r.kind, r.L_A};
    bool seen = false;
    for (const auto& k : keys) seen = seen || k == key;
    if (!seen) keys.push_back(key);
  }
  for (const auto& [kind, L] : keys) {
    std::vector<int> sizes;
    std::vector<double> gstar;
    for (const auto& r : pc_rows)
      if (r.ok && r.kind == kind && r.L_A == L) {
        sizes.push_back(r.N);
        gstar.push_back(r.g_star);
      }
    auto& row = ex.add_row();
    row[0] = to_string(cfg.backend);
    row[1] = cfg.label;
    row[2] = cfg.axis;
    row[3] = cfg.fixed;
    row[4] = static_cast<std::int64_t>(L);
    row[5] = kind;
    row[6] = static_cast<std::int64_t>(static_cast<long long>(sizes.size()));
    try {
      const PowerLawFit fit = fit_shift_power_law(sizes, gstar);
      row[7] = fit.g_c;
      row[8] = fit.theta;
      row[9] = fit.theta_inverse;
      row[10] = fit.amplitude;
      row[11] = fit.residual_norm;
      row[12] = fit.g_c_stderr;
      row[13] = static_cast<std::int64_t>(fit.iterations);
      row[14] = static_cast<std::int64_t>(fit.converged ? 1 : 0);
      row[15] = static_cast<std::int64_t>(1);
      row[16] = std::string();
    } catch (const std::exception& e) {
      row[15] = static_cast<std::int64_t>(0);
      row[16] = std::string(e.what());
    }
  }
  paths.push_back(emit_table(ex, cfg, "extrapolation"));
  report_run(run, paths);
}

// ---- free-fermion phase diagram --------------------------------------------

void run_phase_diagram(const SweepConfig& cfg) {
  if (cfg.backend != Backend::FreeFermionThermo)
    throw Error("phase-diagram requires the free-fermion-thermo backend");
  const int L = cfg.blocks.front();
  Table t;
  t.columns = {"backend", "label",   "axis",  "fixed",  "m_eff",
               "L_A",     "g",       "e0",    "band_gap", "winding",
               "berry",   "lambda",  "eps1",  "factorization_error",
               "ok",      "error"};
  for (double d : cfg.sweep_values()) {
    auto& row = t.add_row();
    row[0] = to_string(cfg.backend);
    row[1] = cfg.label;
    row[2] = cfg.axis;
    row[3] = cfg.fixed;
    row[4] = static_cast<std::int64_t>(cfg.m_eff);
    row[5] = static_cast<std::int64_t>(L);
    row[6] = d;
    try {
      row[7] = ground_energy_thermo(d);
      row[8] = 4.0 * std::abs(d);
      try {
        row[9] = static_cast<std::int64_t>(winding_number(d));
        row[10] = berry_phase(d);
      } catch (const std::exception&) {
        // gapless point: invariants stay empty
      }
      try {
        const EdgeModeReport rep =
            edge_mode_report(correlation_matrix_thermo(d, L, cfg.m_eff));
        row[11] = rep.lambda;
        row[12] = rep.eps1;
        row[13] = rep.factorization_error;
      } catch (const std::exception&) {
        // no edge pair on the trivial side: cells stay empty
      }
      row[14] = static_cast<std::int64_t>(1);
      row[15] = std::string();
    } catch (const std::exception& e) {
      row[14] = static_cast<std::int64_t>(0);
      row[15] = std::string(e.what());
    }
  }
  const std::string path = emit_table(t, cfg, "phase_diagram");
  std::printf("wrote %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Entanglement toolkit for the bond-alternating spin-1/2 XXZ ring"};
  app.require_subcommand(1);

  Overrides o_sweep, o_dlc, o_maj, o_spec, o_scal, o_phase;

  auto* c_sweep = app.add_subcommand(
      "sweep", "evaluate a sweep and emit the observables table");
  add_common(c_sweep, o_sweep);
  c_sweep->callback([&] {
    const SweepConfig cfg = load_config(o_sweep);
    const SweepRun run = run_sweep(cfg, Payload::Spectra);
    report_run(run, {emit_table(observables_table(run), cfg, "observables")});
  });

  auto* c_dlc = app.add_subcommand(
      "dlc", "emit the differential convertibility sign map");
  add_common(c_dlc, o_dlc);
  c_dlc->callback([&] {
    const SweepConfig cfg = load_config(o_dlc);
    const SweepRun run = run_sweep(cfg, Payload::Spectra);
    report_run(run, {emit_table(dlc_table(run), cfg, "dlc")});
  });

  auto* c_maj = app.add_subcommand(
      "majorize", "emit the majorization map and catalyst verdicts");
  add_common(c_maj, o_maj);
  c_maj->callback([&] {
    const SweepConfig cfg = load_config(o_maj);
    const SweepRun run = run_sweep(cfg, Payload::Spectra);
    report_run(run, {emit_table(majorization_table(run), cfg, "majorization"),
                     emit_table(verdicts_table(run), cfg, "verdicts")});
  });

  auto* c_spec = app.add_subcommand(
      "spectrum", "emit the labeled entanglement spectrum");
  add_common(c_spec, o_spec);
  c_spec->callback([&] {
    const SweepConfig cfg = load_config(o_spec);
    const SweepRun run = run_sweep(cfg, Payload::Diag);
    report_run(run, {emit_table(spectrum_table(run), cfg, "spectrum")});
  });

  auto* c_scal = app.add_subcommand(
      "scaling",
      "pseudo-critical points and power-law extrapolation over sizes");
  add_common(c_scal, o_scal);
  c_scal->callback([&] { run_scaling(load_config(o_scal)); });

  auto* c_phase = app.add_subcommand(
      "phase-diagram",
      "topological invariants and edge modes along a dimerization sweep");
  add_common(c_phase, o_phase);
  c_phase->callback([&] { run_phase_diagram(load_config(o_phase)); });

  std::string recipe_name;
  std::string recipe_out;
  auto* c_recipe =
      app.add_subcommand("recipe", "emit a named sweep configuration");
  c_recipe->add_option("name", recipe_name, "one of fig2..fig8")->required();
  c_recipe->add_option("--out", recipe_out,
                       "directory to write <name>.json into (default stdout)");
  c_recipe->callback([&] {
    const SweepConfig cfg = figure_recipe(recipe_name);
    const std::string text = sweep_config_to_json(cfg);
    if (recipe_out.empty()) {
      std::fputs(text.c_str(), stdout);
    } else {
      fs::create_directories(recipe_out);
      const std::string path =
          (fs::path(recipe_out) / (recipe_name + ".json")).string();
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot open " + path);
      out << text;
      std::printf("wrote %s\n", path.c_str());
    }
  });

  auto* c_val = app.add_subcommand(
      "validate", "run the built-in validation suite (slow: minutes)");
  c_val->callback([&] {
    const fs::path scratch =
        fs::temp_directory_path() /
        ("baxxz-validate-" + std::to_string(::getpid()));
    const auto results = acceptance::run_all(scratch.string());
    const int failed = acceptance::print_results(results);
    std::error_code ec;
    fs::remove_all(scratch, ec);
    if (failed > 0) throw CLI::RuntimeError(1);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
