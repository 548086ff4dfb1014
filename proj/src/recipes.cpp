#include "baxxz/recipes.hpp"

namespace baxxz {

namespace {
SweepConfig base_ed(const std::string& label) {
  SweepConfig c;
  c.label = label;
  c.backend = Backend::ExactDiag;
  c.axis = "Delta";
  c.fixed = 0.3;  // bond alternation held at delta = 0.3
  c.epsilon = 5e-3;
  c.out_dir = "out/" + label;
  return c;
}

SweepConfig base_thermo(const std::string& label) {
  SweepConfig c;
  c.label = label;
  c.backend = Backend::FreeFermionThermo;
  c.axis = "delta";
  c.fixed = 0.0;
  c.epsilon = 5e-3;
  c.m_eff = 4096;
  // Offset grid: never touches the gapless point delta = 0 or the
  // decoupling points delta = +-1.
  c.sweep_min = -0.975;
  c.sweep_max = 0.975;
  c.sweep_step = 0.05;
  c.sizes.clear();
  c.out_dir = "out/" + label;
  return c;
}
}  // namespace

SweepConfig figure_recipe(const std::string& name) {
  if (name == "fig2") {
    // Convertibility sign map across the anisotropy sweep.
    SweepConfig c = base_ed(name);
    c.sweep_min = 0.0;
    c.sweep_max = 6.0;
    c.sweep_step = 0.1;
    c.sizes = {16};
    c.blocks = {4, 8};
    return c;
  }
  if (name == "fig3") {
    // Labeled entanglement spectrum along the anisotropy sweep.
    SweepConfig c = base_ed(name);
    c.sweep_min = 0.0;
    c.sweep_max = 6.0;
    c.sweep_step = 0.25;
    c.sizes = {16};
    c.blocks = {8};
    c.spectrum_cap = 64;
    return c;
  }
  if (name == "fig4") {
    // Purity W along the anisotropy sweep.
    SweepConfig c = base_ed(name);
    c.sweep_min = 0.0;
    c.sweep_max = 6.0;
    c.sweep_step = 0.1;
    c.sizes = {16};
    c.blocks = {4, 8};
    return c;
  }
  if (name == "fig5") {
    // Convertibility map of the hopping-only chain in the thermodynamic
    // limit, swept through the dimerization axis.
    SweepConfig c = base_thermo(name);
    c.blocks = {4, 60};
    return c;
  }
  if (name == "fig6") {
    // Majorization map of the thermodynamic hopping-only chain.
    SweepConfig c = base_thermo(name);
    c.blocks = {60};
    return c;
  }
  if (name == "fig7") {
    // Pseudo-critical points from the entropy curves, with power-law
    // extrapolation over system size.
    SweepConfig c = base_ed(name);
    c.sweep_min = 1.0;
    c.sweep_max = 6.0;
    c.sweep_step = 0.1;
    c.sizes = {8, 12, 16, 20};
    c.blocks = {4, 8};
    return c;
  }
  if (name == "fig8") {
    // Energy-curvature peaks and their extrapolation.
    SweepConfig c = base_ed(name);
    c.sweep_min = 2.0;
    c.sweep_max = 5.5;
    c.sweep_step = 0.1;
    c.sizes = {8, 12, 16, 20};
    c.blocks = {4};
    return c;
  }
  throw Error("unknown recipe \"" + name + "\" (expected fig2..fig8)");
}

std::vector<std::string> recipe_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

std::string recipe_summary(const std::string& name) {
  if (name == "fig2") return "convertibility sign map, anisotropy sweep (ED)";
  if (name == "fig3") return "labeled entanglement spectrum sweep (ED)";
  if (name == "fig4") return "purity W along the anisotropy sweep (ED)";
  if (name == "fig5")
    return "convertibility map, dimerization sweep (thermodynamic)";
  if (name == "fig6")
    return "majorization map, dimerization sweep (thermodynamic)";
  if (name == "fig7") return "entropy pseudo-criticals and extrapolation (ED)";
  if (name == "fig8") return "energy-curvature peaks and extrapolation (ED)";
  throw Error("unknown recipe \"" + name + "\"");
}

}  // namespace baxxz
