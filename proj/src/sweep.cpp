#include "baxxz/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "baxxz/cache.hpp"
#include "baxxz/chain.hpp"
#include "baxxz/convertibility.hpp"
#include "baxxz/exact_diag.hpp"
#include "baxxz/free_fermion.hpp"
#include "baxxz/scaling.hpp"

namespace fs = std::filesystem;

namespace baxxz {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::ExactDiag: return "exact-diag";
    case Backend::FreeFermion: return "free-fermion";
    case Backend::FreeFermionThermo: return "free-fermion-thermo";
  }
  return "?";
}

Backend backend_from_string(const std::string& s) {
  if (s == "exact-diag") return Backend::ExactDiag;
  if (s == "free-fermion") return Backend::FreeFermion;
  if (s == "free-fermion-thermo") return Backend::FreeFermionThermo;
  throw Error("unknown backend \"" + s + "\"");
}

std::string to_string(Payload p) {
  switch (p) {
    case Payload::Energy: return "energy";
    case Payload::Spectra: return "spectra";
    case Payload::Diag: return "diag";
  }
  return "?";
}

void SweepConfig::validate() const {
  if (schema_version != 1)
    throw Error("config: unsupported schema_version " +
                std::to_string(schema_version));
  if (axis != "Delta" && axis != "delta")
    throw Error("config: axis must be \"Delta\" or \"delta\"");
  if (!(sweep_step > 0.0)) throw Error("config: sweep step must be > 0");
  if (!(sweep_min <= sweep_max))
    throw Error("config: sweep min must not exceed max");
  if ((sweep_max - sweep_min) / sweep_step > 1e5)
    throw Error("config: sweep grid exceeds 100000 points");
  if (!(epsilon > 0.0)) throw Error("config: epsilon must be > 0");
  if (workers < 1 || workers > 256)
    throw Error("config: workers must be in [1, 256]");
  if (format != "csv" && format != "json")
    throw Error("config: format must be csv or json");
  if (spectrum_cap < 2) throw Error("config: spectrum_cap must be >= 2");
  if (alphas.count < 2 || !(alphas.min > 0.0) || !(alphas.min < alphas.max))
    throw Error("config: alpha grid needs count >= 2 and 0 < min < max");
  if (blocks.empty()) throw Error("config: blocks list is empty");
  for (int L : blocks)
    if (L < 2 || L % 2 != 0)
      throw Error("config: block sizes must be even and >= 2");

  const bool ff = backend != Backend::ExactDiag;
  if (ff && (axis != "delta" || fixed != 0.0))
    throw Error(
        "config: free-fermion backends solve Delta = 0 only; use axis "
        "\"delta\" with fixed = 0");
  if (backend == Backend::FreeFermionThermo) {
    for (int L : blocks)
      if (m_eff < 2 * L)
        throw Error("config: m_eff must be at least twice the largest block");
    return;  // sizes ignored
  }
  if (sizes.empty()) throw Error("config: sizes list is empty");
  bool any_pair = false;
  for (int N : sizes) {
    if (N < 4 || N % 2 != 0)
      throw Error("config: chain lengths must be even and >= 4");
    if (backend == Backend::ExactDiag && N > 20)
      throw Error("config: exact-diag backend is capped at N = 20");
    if (backend == Backend::FreeFermion && N > 4000000)
      throw Error("config: free-fermion backend is capped at N = 4000000");
    for (int L : blocks) any_pair = any_pair || L <= N / 2;
  }
  if (!any_pair)
    throw Error("config: no (N, L_A) pair satisfies L_A <= N/2");
}

std::vector<double> SweepConfig::sweep_values() const {
  const auto n = static_cast<std::size_t>(
      std::floor((sweep_max - sweep_min) / sweep_step + 1e-9));
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    g[i] = sweep_min + static_cast<double>(i) * sweep_step;
  return g;
}

std::vector<double> SweepConfig::alpha_grid() const {
  return make_alpha_grid(alphas);
}

// ---------------------------------------------------------------- config io

std::string sweep_config_to_json(const SweepConfig& c) {
  std::string s = "{\n";
  auto kv = [&](const char* k, const std::string& v, bool comma = true) {
    s += "  \"";
    s += k;
    s += "\": ";
    s += v;
    if (comma) s += ',';
    s += '\n';
  };
  auto str = [](const std::string& v) { return "\"" + json_escape(v) + "\""; };
  kv("schema_version", std::to_string(c.schema_version));
  kv("label", str(c.label));
  kv("backend", str(to_string(c.backend)));
  kv("axis", str(c.axis));
  kv("fixed", format_double(c.fixed));
  kv("sweep", "{\"min\": " + format_double(c.sweep_min) +
                  ", \"max\": " + format_double(c.sweep_max) +
                  ", \"step\": " + format_double(c.sweep_step) + "}");
  auto ints = [](const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(v[i]);
    }
    return out + "]";
  };
  kv("sizes", ints(c.sizes));
  kv("blocks", ints(c.blocks));
  kv("alpha",
     "{\"count\": " + std::to_string(c.alphas.count) +
         ", \"min\": " + format_double(c.alphas.min) +
         ", \"max\": " + format_double(c.alphas.max) +
         ", \"include_one\": " + (c.alphas.include_one ? "true" : "false") +
         ", \"include_inf\": " + (c.alphas.include_inf ? "true" : "false") +
         "}");
  kv("epsilon", format_double(c.epsilon));
  kv("m_eff", std::to_string(c.m_eff));
  kv("spectrum_cap", std::to_string(c.spectrum_cap));
  kv("seed", std::to_string(c.seed));
  kv("workers", std::to_string(c.workers));
  kv("cache", c.use_cache ? "true" : "false");
  kv("cache_dir", str(c.cache_dir));
  kv("out_dir", str(c.out_dir));
  kv("format", str(c.format), false);
  s += "}\n";
  return s;
}

SweepConfig parse_sweep_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: top level must be an object");
  static const char* known[] = {
      "schema_version", "label",  "backend",      "axis",   "fixed",
      "sweep",          "sizes",  "blocks",       "alpha",  "epsilon",
      "m_eff",          "spectrum_cap", "seed",   "workers", "cache",
      "cache_dir",      "out_dir", "format"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw Error("config: unknown key \"" + it.key() + "\"");
  }
  SweepConfig c;
  try {
    c.schema_version = j.at("schema_version").get<int>();
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    c.backend = backend_from_string(j.at("backend").get<std::string>());
    c.axis = j.at("axis").get<std::string>();
    c.fixed = j.at("fixed").get<double>();
    const auto& sw = j.at("sweep");
    c.sweep_min = sw.at("min").get<double>();
    c.sweep_max = sw.at("max").get<double>();
    c.sweep_step = sw.at("step").get<double>();
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<int>>();
    c.blocks = j.at("blocks").get<std::vector<int>>();
    if (j.contains("alpha")) {
      const auto& a = j.at("alpha");
      if (a.contains("count")) c.alphas.count = a.at("count").get<int>();
      if (a.contains("min")) c.alphas.min = a.at("min").get<double>();
      if (a.contains("max")) c.alphas.max = a.at("max").get<double>();
      if (a.contains("include_one"))
        c.alphas.include_one = a.at("include_one").get<bool>();
      if (a.contains("include_inf"))
        c.alphas.include_inf = a.at("include_inf").get<bool>();
    }
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("m_eff")) c.m_eff = j.at("m_eff").get<int>();
    if (j.contains("spectrum_cap"))
      c.spectrum_cap = j.at("spectrum_cap").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("cache")) c.use_cache = j.at("cache").get<bool>();
    if (j.contains("cache_dir"))
      c.cache_dir = j.at("cache_dir").get<std::string>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

// ---------------------------------------------------------------- records

namespace {
void append_array(std::string& s, const char* key,
                  const std::vector<double>& v, bool comma = true) {
  s += '"';
  s += key;
  s += "\":[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  s += ']';
  if (comma) s += ',';
}
void append_array(std::string& s, const char* key, const std::vector<int>& v,
                  bool comma = true) {
  s += '"';
  s += key;
  s += "\":[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  s += ']';
  if (comma) s += ',';
}
}  // namespace

std::string EvalRecord::to_json() const {
  std::string s = "{";
  s += std::string("\"ok\":") + (ok ? "true" : "false") + ",";
  s += "\"error\":\"" + json_escape(error) + "\",";
  s += "\"e0m\":" + format_double(e0_minus) + ",";
  s += "\"e0c\":" + format_double(e0_center) + ",";
  s += "\"e0p\":" + format_double(e0_plus) + ",";
  s += "\"gap\":" + format_double(gap) + ",";
  s += std::string("\"qd\":") + (quasi_degenerate ? "true" : "false") + ",";
  s += "\"tr\":" + format_double(trace_center) + ",";
  append_array(s, "wc", omega_center);
  append_array(s, "wp", omega_plus);
  append_array(s, "szc", sz_center);
  append_array(s, "pc", parity_center);
  append_array(s, "lc", labeled_center);
  append_array(s, "qc", q_center);
  append_array(s, "qp", q_plus);
  append_array(s, "qpc", q_parity_center, false);
  s += '}';
  return s;
}

EvalRecord EvalRecord::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EvalRecord r;
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.e0_minus = j.at("e0m").get<double>();
  r.e0_center = j.at("e0c").get<double>();
  r.e0_plus = j.at("e0p").get<double>();
  r.gap = j.at("gap").get<double>();
  r.quasi_degenerate = j.at("qd").get<bool>();
  r.trace_center = j.at("tr").get<double>();
  r.omega_center = j.at("wc").get<std::vector<double>>();
  r.omega_plus = j.at("wp").get<std::vector<double>>();
  r.sz_center = j.at("szc").get<std::vector<int>>();
  r.parity_center = j.at("pc").get<std::vector<int>>();
  r.labeled_center = j.at("lc").get<std::vector<int>>();
  r.q_center = j.at("qc").get<std::vector<double>>();
  r.q_plus = j.at("qp").get<std::vector<double>>();
  r.q_parity_center = j.at("qpc").get<std::vector<int>>();
  return r;
}

// ---------------------------------------------------------------- evaluate

namespace {

std::pair<double, double> couplings(const SweepConfig& cfg, double g) {
  const double delta = cfg.axis == "delta" ? g : cfg.fixed;
  const double Delta = cfg.axis == "Delta" ? g : cfg.fixed;
  return {delta, Delta};
}

// Plain (unlabeled) descending spectrum of a density matrix.
std::vector<double> plain_spectrum(const Eigen::MatrixXd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
  std::vector<double> w(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  for (double& x : w) x = std::max(x, 0.0);
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

EvalRecord evaluate_point(const SweepConfig& cfg, Payload payload, int N,
                          int L_A, double g) {
  EvalRecord rec;
  const bool want_spectra = payload != Payload::Energy;
  switch (cfg.backend) {
    case Backend::ExactDiag: {
      auto solve = [&](double gv, bool need_gap) {
        auto [delta, Delta] = couplings(cfg, gv);
        ChainSpec spec;
        spec.N = N;
        spec.delta = delta;
        spec.Delta = Delta;
        spec.L_A = L_A;
        spec.epsilon = cfg.epsilon;
        EdOptions opts;
        opts.seed = cfg.seed;
        opts.compute_gap = need_gap;
        return ground_state(spec, opts);
      };
      const GroundState gm = solve(g - cfg.epsilon, false);
      const GroundState gc = solve(g, payload == Payload::Diag);
      rec.e0_minus = gm.e0;
      rec.e0_center = gc.e0;
      if (payload == Payload::Diag) {
        rec.gap = gc.gap;
        rec.quasi_degenerate = gc.quasi_degenerate;
      }
      if (want_spectra) {
        const GroundState gp = solve(g + cfg.epsilon, false);
        rec.e0_plus = gp.e0;
        const EntanglementSpectrum es =
            labeled_entanglement_spectrum(reduced_density_matrix(gc), L_A);
        rec.trace_center = es.trace;
        rec.omega_center.reserve(es.levels.size());
        for (const EsLevel& l : es.levels) {
          rec.omega_center.push_back(l.omega);
          rec.sz_center.push_back(l.sz);
          rec.parity_center.push_back(l.parity);
          rec.labeled_center.push_back(l.labeled ? 1 : 0);
        }
        rec.omega_plus = plain_spectrum(reduced_density_matrix(gp));
      } else {
        const GroundState gp = solve(g + cfg.epsilon, false);
        rec.e0_plus = gp.e0;
      }
      break;
    }
    case Backend::FreeFermion: {
      const int M = N / 2;
      auto delta_at = [&](double gv) { return couplings(cfg, gv).first; };
      rec.e0_minus = ground_energy_per_site(M, delta_at(g - cfg.epsilon));
      rec.e0_center = ground_energy_per_site(M, delta_at(g));
      rec.e0_plus = ground_energy_per_site(M, delta_at(g + cfg.epsilon));
      double band_min = dispersion(M, delta_at(g), 1);
      for (int k = 2; k <= M; ++k)
        band_min = std::min(band_min, dispersion(M, delta_at(g), k));
      rec.gap = band_min;
      if (want_spectra) {
        const CorrelationBlock bc = correlation_matrix(M, delta_at(g), L_A);
        const CorrelationBlock bp =
            correlation_matrix(M, delta_at(g + cfg.epsilon), L_A);
        rec.q_center = occupation_spectrum(bc);
        rec.q_plus = occupation_spectrum(bp);
        rec.q_parity_center = bc.mode_parity;
      }
      break;
    }
    case Backend::FreeFermionThermo: {
      auto delta_at = [&](double gv) { return couplings(cfg, gv).first; };
      rec.e0_minus = ground_energy_thermo(delta_at(g - cfg.epsilon));
      rec.e0_center = ground_energy_thermo(delta_at(g));
      rec.e0_plus = ground_energy_thermo(delta_at(g + cfg.epsilon));
      rec.gap = 4.0 * std::abs(delta_at(g));
      if (want_spectra) {
        const CorrelationBlock bc =
            correlation_matrix_thermo(delta_at(g), L_A, cfg.m_eff);
        const CorrelationBlock bp = correlation_matrix_thermo(
            delta_at(g + cfg.epsilon), L_A, cfg.m_eff);
        rec.q_center = occupation_spectrum(bc);
        rec.q_plus = occupation_spectrum(bp);
        rec.q_parity_center = bc.mode_parity;
      }
      break;
    }
  }
  rec.ok = true;
  return rec;
}

EvalRecord guarded_evaluate(const SweepConfig& cfg, Payload payload, int N,
                            int L_A, double g) {
  try {
    return evaluate_point(cfg, payload, N, L_A, g);
  } catch (const std::exception& e) {
    EvalRecord rec;
    rec.ok = false;
    rec.error = e.what();
    return rec;
  }
}

std::string cache_key(const SweepConfig& cfg, Payload payload, int N, int L_A,
                      double g) {
  std::string key = "baxxz-v1|";
  key += to_string(cfg.backend);
  key += '|';
  key += to_string(payload);
  key += "|ax=" + cfg.axis;
  key += "|fx=" + format_double(cfg.fixed);
  key += "|N=" + std::to_string(N);
  key += "|L=" + std::to_string(L_A);
  key += "|g=" + format_double(g);
  key += "|eps=" + format_double(cfg.epsilon);
  key += "|meff=" + std::to_string(cfg.backend == Backend::FreeFermionThermo
                                       ? cfg.m_eff
                                       : 0);
  key += "|seed=" + std::to_string(cfg.seed);
  return key;
}

}  // namespace

SweepRun run_sweep(const SweepConfig& cfg, Payload payload) {
  cfg.validate();
  const std::vector<double> grid = cfg.sweep_values();

  std::vector<int> sizes = cfg.backend == Backend::FreeFermionThermo
                               ? std::vector<int>{0}
                               : cfg.sizes;
  std::vector<int> blocks = cfg.blocks;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());

  SweepRun run;
  run.config = cfg;
  run.payload = payload;
  for (int N : sizes)
    for (int L : blocks) {
      if (cfg.backend != Backend::FreeFermionThermo && L > N / 2)
        continue;  // incompatible pair; documented as skipped
      for (double g : grid) {
        PointResult p;
        p.N = N;
        p.L_A = L;
        p.g = g;
        run.points.push_back(std::move(p));
      }
    }

  std::optional<EvalCache> cache;
  if (cfg.use_cache) cache.emplace(cfg.cache_dir, cfg.out_dir);

  std::atomic<std::size_t> next{0}, evaluated{0}, hits{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= run.points.size()) return;
      PointResult& p = run.points[i];
      const std::string key = cache_key(cfg, payload, p.N, p.L_A, p.g);
      if (cache) {
        if (auto hit = cache->get(key)) {
          try {
            p.rec = EvalRecord::from_json(*hit);
            hits.fetch_add(1);
            continue;
          } catch (...) {
            // unreadable record: fall through and recompute
          }
        }
      }
      p.rec = guarded_evaluate(cfg, payload, p.N, p.L_A, p.g);
      evaluated.fetch_add(1);
      if (cache) {
        try {
          cache->put(key, p.rec.to_json());
        } catch (...) {
          // cache write failure must not abort the sweep
        }
      }
    }
  };

  const int nw = std::max(1, cfg.workers);
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int t = 0; t < nw; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  run.evaluated = evaluated.load();
  run.cache_hits = hits.load();
  return run;
}

// ---------------------------------------------------------------- merge side

std::vector<double> record_spectrum(const EvalRecord& rec, bool plus,
                                    int cap) {
  if (!rec.q_center.empty() || !rec.q_plus.empty()) {
    const std::vector<double>& q = plus ? rec.q_plus : rec.q_center;
    return rho_spectrum_top(q, static_cast<std::size_t>(cap), 0.0);
  }
  std::vector<double> w = plus ? rec.omega_plus : rec.omega_center;
  if (w.size() > static_cast<std::size_t>(cap))
    w.resize(static_cast<std::size_t>(cap));
  return w;
}

std::vector<double> record_entropies(const EvalRecord& rec, bool plus,
                                     const std::vector<double>& alphas) {
  if (!rec.q_center.empty() || !rec.q_plus.empty()) {
    const std::vector<double>& q = plus ? rec.q_plus : rec.q_center;
    std::vector<double> s(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
      s[i] = renyi_from_occupations(q, alphas[i]);
    return s;
  }
  return renyi_grid_values(plus ? rec.omega_plus : rec.omega_center, alphas);
}

namespace {

struct Group {  // consecutive points sharing (N, L_A)
  int N = 0, L_A = 0;
  std::size_t begin = 0, end = 0;
};

std::vector<Group> group_points(const SweepRun& run) {
  std::vector<Group> gs;
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const auto& p = run.points[i];
    if (gs.empty() || gs.back().N != p.N || gs.back().L_A != p.L_A) {
      Group g;
      g.N = p.N;
      g.L_A = p.L_A;
      g.begin = i;
      gs.push_back(g);
    }
    gs.back().end = i + 1;
  }
  return gs;
}

void context_columns(Table& t) {
  t.columns = {"backend", "label", "axis", "fixed", "N", "L_A", "g"};
}

std::size_t fill_context(std::vector<Cell>& row, const SweepRun& run,
                         const PointResult& p) {
  const SweepConfig& c = run.config;
  row[0] = to_string(c.backend);
  row[1] = c.label;
  row[2] = c.axis;
  row[3] = c.fixed;
  row[4] = static_cast<std::int64_t>(p.N);
  row[5] = static_cast<std::int64_t>(p.L_A);
  row[6] = p.g;
  return 7;
}

bool is_ff(const EvalRecord& rec) {
  return !rec.q_center.empty() || !rec.q_plus.empty();
}

}  // namespace

Table observables_table(const SweepRun& run) {
  Table t;
  context_columns(t);
  t.columns.insert(t.columns.end(),
                   {"m_eff", "ok", "error", "e0", "e0_minus", "e0_plus",
                    "chi", "S1", "S2", "xi0", "W", "schmidt_gap", "gap",
                    "quasi_degenerate", "trace"});
  const bool thermo = run.config.backend == Backend::FreeFermionThermo;
  for (const auto& p : run.points) {
    auto& row = t.add_row();
    std::size_t j = fill_context(row, run, p);
    row[j++] = static_cast<std::int64_t>(thermo ? run.config.m_eff : 0);
    row[j++] = static_cast<std::int64_t>(p.rec.ok ? 1 : 0);
    row[j++] = p.rec.error;
    if (!p.rec.ok) continue;
    const EvalRecord& r = p.rec;
    row[j++] = r.e0_center;
    row[j++] = r.e0_minus;
    row[j++] = r.e0_plus;
    row[j++] = energy_curvature(r.e0_minus, r.e0_center, r.e0_plus,
                                run.config.epsilon);
    if (run.payload != Payload::Energy) {
      const std::vector<double> a = {1.0, 2.0,
                                     std::numeric_limits<double>::infinity()};
      const std::vector<double> s = record_entropies(r, false, a);
      row[j++] = s[0];
      row[j++] = s[1];
      row[j++] = s[2];
      row[j++] = 4.0 * std::exp(-s[1]);
      try {
        if (is_ff(r)) {
          const std::vector<double> top = rho_spectrum_top(r.q_center, 2, 0.0);
          row[j] = top.size() > 1 ? top[0] - top[1]
                                  : throw Error("rank-1 spectrum");
        } else {
          row[j] = schmidt_gap(r.omega_center);
        }
      } catch (const std::exception&) {
        // leave the cell empty when the gap is undefined
      }
      ++j;
    } else {
      j += 5;
    }
    if (r.gap >= 0.0) row[j] = r.gap;
    ++j;
    row[j++] = static_cast<std::int64_t>(r.quasi_degenerate ? 1 : 0);
    row[j++] = r.trace_center;
  }
  return t;
}

Table dlc_table(const SweepRun& run) {
  if (run.payload == Payload::Energy)
    throw Error("dlc_table: run carries no spectra (energy payload)");
  Table t;
  context_columns(t);
  t.columns.insert(t.columns.end(), {"alpha", "sign", "ok", "error"});
  const std::vector<double> alphas = run.config.alpha_grid();
  for (const Group& grp : group_points(run)) {
    std::vector<double> g;
    std::vector<std::vector<double>> s_at, s_plus;
    std::vector<std::size_t> ok_idx;
    for (std::size_t i = grp.begin; i < grp.end; ++i) {
      const auto& p = run.points[i];
      if (!p.rec.ok) {
        auto& row = t.add_row();
        std::size_t j = fill_context(row, run, p);
        j += 2;  // alpha, sign stay empty
        row[j++] = static_cast<std::int64_t>(0);
        row[j++] = p.rec.error;
        continue;
      }
      g.push_back(p.g);
      ok_idx.push_back(i);
      s_at.push_back(record_entropies(p.rec, false, alphas));
      s_plus.push_back(record_entropies(p.rec, true, alphas));
    }
    if (g.empty()) continue;
    const ConvertibilityMap map = dlc_map(g, alphas, s_at, s_plus);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& p = run.points[ok_idx[i]];
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        auto& row = t.add_row();
        std::size_t j = fill_context(row, run, p);
        row[j++] = alphas[a];
        row[j++] = static_cast<std::int64_t>(map.sign[i][a]);
        row[j++] = static_cast<std::int64_t>(1);
        row[j++] = std::string();
      }
    }
  }
  return t;
}

Table majorization_table(const SweepRun& run) {
  if (run.payload == Payload::Energy)
    throw Error("majorization_table: run carries no spectra (energy payload)");
  Table t;
  context_columns(t);
  t.columns.insert(t.columns.end(), {"k", "sign", "ok", "error"});
  const int cap = run.config.spectrum_cap;
  for (const Group& grp : group_points(run)) {
    std::vector<double> g;
    std::vector<std::vector<double>> w_at, w_plus;
    std::vector<std::size_t> ok_idx;
    for (std::size_t i = grp.begin; i < grp.end; ++i) {
      const auto& p = run.points[i];
      if (!p.rec.ok) {
        auto& row = t.add_row();
        std::size_t j = fill_context(row, run, p);
        j += 2;
        row[j++] = static_cast<std::int64_t>(0);
        row[j++] = p.rec.error;
        continue;
      }
      g.push_back(p.g);
      ok_idx.push_back(i);
      w_at.push_back(record_spectrum(p.rec, false, cap));
      w_plus.push_back(record_spectrum(p.rec, true, cap));
    }
    if (g.empty()) continue;
    const MajorizationMap map = majorization_map(g, w_at, w_plus);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& p = run.points[ok_idx[i]];
      for (std::size_t k = 0; k < map.k_max; ++k) {
        auto& row = t.add_row();
        std::size_t j = fill_context(row, run, p);
        row[j++] = static_cast<std::int64_t>(k);
        row[j++] = static_cast<std::int64_t>(map.sign[i][k]);
        row[j++] = static_cast<std::int64_t>(1);
        row[j++] = std::string();
      }
    }
  }
  return t;
}

Table verdicts_table(const SweepRun& run) {
  if (run.payload == Payload::Energy)
    throw Error("verdicts_table: run carries no spectra (energy payload)");
  Table t;
  context_columns(t);
  t.columns.insert(t.columns.end(),
                   {"verdict", "degenerate", "dlc_pos", "dlc_neg", "maj_pos",
                    "maj_neg", "schur_consistent", "ok", "error"});
  const std::vector<double> alphas = run.config.alpha_grid();
  const int cap = run.config.spectrum_cap;
  for (const Group& grp : group_points(run)) {
    std::vector<double> g;
    std::vector<std::vector<double>> s_at, s_plus, w_at, w_plus;
    std::vector<std::size_t> ok_idx;
    for (std::size_t i = grp.begin; i < grp.end; ++i) {
      const auto& p = run.points[i];
      if (!p.rec.ok) {
        auto& row = t.add_row();
        std::size_t j = fill_context(row, run, p);
        j += 7;
        row[j++] = static_cast<std::int64_t>(0);
        row[j++] = p.rec.error;
        continue;
      }
      g.push_back(p.g);
      ok_idx.push_back(i);
      s_at.push_back(record_entropies(p.rec, false, alphas));
      s_plus.push_back(record_entropies(p.rec, true, alphas));
      w_at.push_back(record_spectrum(p.rec, false, cap));
      w_plus.push_back(record_spectrum(p.rec, true, cap));
    }
    if (g.empty()) continue;
    const ConvertibilityMap dlc = dlc_map(g, alphas, s_at, s_plus);
    const MajorizationMap maj = majorization_map(g, w_at, w_plus);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& p = run.points[ok_idx[i]];
      const VerdictReport v = catalyst_verdict(dlc.sign[i], maj.sign[i]);
      auto& row = t.add_row();
      std::size_t j = fill_context(row, run, p);
      row[j++] = to_string(v.verdict);
      row[j++] = static_cast<std::int64_t>(v.degenerate ? 1 : 0);
      row[j++] = static_cast<std::int64_t>(v.dlc_pos);
      row[j++] = static_cast<std::int64_t>(v.dlc_neg);
      row[j++] = static_cast<std::int64_t>(v.maj_pos);
      row[j++] = static_cast<std::int64_t>(v.maj_neg);
      row[j++] = static_cast<std::int64_t>(
          schur_consistent(dlc.sign[i], maj.sign[i]) ? 1 : 0);
      row[j++] = static_cast<std::int64_t>(1);
      row[j++] = std::string();
    }
  }
  return t;
}

Table spectrum_table(const SweepRun& run) {
  if (run.payload == Payload::Energy)
    throw Error("spectrum_table: run carries no spectra (energy payload)");
  Table t;
  context_columns(t);
  t.columns.insert(t.columns.end(),
                   {"level", "omega", "xi", "sz", "parity", "labeled", "ok",
                    "error"});
  const int cap = run.config.spectrum_cap;
  for (const auto& p : run.points) {
    if (!p.rec.ok) {
      auto& row = t.add_row();
      std::size_t j = fill_context(row, run, p);
      j += 6;
      row[j++] = static_cast<std::int64_t>(0);
      row[j++] = p.rec.error;
      continue;
    }
    const EvalRecord& r = p.rec;
    auto emit_level = [&](std::int64_t lvl, double omega, const Cell& sz,
                          const Cell& parity, bool labeled) {
      auto& row = t.add_row();
      std::size_t j = fill_context(row, run, p);
      row[j++] = lvl;
      row[j++] = omega;
      if (omega >= tol::eigenvalue_floor) row[j] = -std::log(omega);
      ++j;
      row[j++] = sz;
      row[j++] = parity;
      row[j++] = static_cast<std::int64_t>(labeled ? 1 : 0);
      row[j++] = static_cast<std::int64_t>(1);
      row[j++] = std::string();
    };
    if (is_ff(r)) {
      if (p.L_A <= 16) {
        const EntanglementSpectrum es =
            labeled_spectrum_from_occupations(r.q_center, r.q_parity_center);
        const std::size_t n =
            std::min<std::size_t>(es.levels.size(),
                                  static_cast<std::size_t>(cap));
        for (std::size_t l = 0; l < n; ++l) {
          const EsLevel& lv = es.levels[l];
          emit_level(static_cast<std::int64_t>(l), lv.omega,
                     static_cast<std::int64_t>(lv.sz),
                     lv.labeled ? Cell(static_cast<std::int64_t>(lv.parity))
                                : Cell(),
                     lv.labeled);
        }
      } else {
        const std::vector<double> w = record_spectrum(r, false, cap);
        for (std::size_t l = 0; l < w.size(); ++l)
          emit_level(static_cast<std::int64_t>(l), w[l], Cell(), Cell(),
                     false);
      }
    } else {
      const std::size_t n = std::min<std::size_t>(
          r.omega_center.size(), static_cast<std::size_t>(cap));
      for (std::size_t l = 0; l < n; ++l) {
        const bool lab = r.labeled_center[l] != 0;
        emit_level(static_cast<std::int64_t>(l), r.omega_center[l],
                   static_cast<std::int64_t>(r.sz_center[l]),
                   lab ? Cell(static_cast<std::int64_t>(r.parity_center[l]))
                       : Cell(),
                   lab);
      }
    }
  }
  return t;
}

std::string emit_table(const Table& t, const SweepConfig& cfg,
                       const std::string& stem) {
  fs::create_directories(cfg.out_dir);
  const std::string path =
      (fs::path(cfg.out_dir) / (stem + "." + cfg.format)).string();
  const std::string body = cfg.format == "csv" ? to_csv(t) : to_json(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit_table: cannot open " + path);
  out << body;
  if (!out) throw Error("emit_table: short write to " + path);
  return path;
}

}  // namespace baxxz
