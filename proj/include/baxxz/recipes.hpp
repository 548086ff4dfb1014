#pragma once

#include <string>
#include <vector>

#include "baxxz/sweep.hpp"

namespace baxxz {

// Prebaked sweep configurations reproducing the package's reference data
// sets at desk scale.  Names: fig2..fig8.  Unknown names throw.
SweepConfig figure_recipe(const std::string& name);

// All recipe names, in order.
std::vector<std::string> recipe_names();

// One-line description of what each recipe produces.
std::string recipe_summary(const std::string& name);

}  // namespace baxxz
