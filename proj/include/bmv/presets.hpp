#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmv/evscale.hpp"
#include "bmv/slices.hpp"
#include "bmv/vine3.hpp"

namespace bmv::presets {

/// Clayton pairs with delta (6, 7.09, 4.67).
Vine3Spec clayton_vine();
/// Gaussian pairs with rho (0.71, 0.78, 0.52).
Vine3Spec gaussian_vine();
/// Frank tau 0.76, Frank tau 0.23, Gaussian tau -0.18.
Vine3Spec river_vine();

/// Ten lambda^2 combinations of the reference scaling table.
std::vector<ScalingPlan> scaling_plans();
/// Clayton pairs on combination 9 and Gaussian pairs on combination 10.
ScaledModel clayton_scaled();
ScaledModel gaussian_scaled();

/// "clayton", "gaussian", "river", "independence".
std::optional<Vine3Spec> vine(const std::string& name);
/// "clayton-scaled", "gaussian-scaled".
std::optional<ScaledModel> scaled(const std::string& name);

}  // namespace bmv::presets
