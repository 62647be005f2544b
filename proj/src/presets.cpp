#include "bmv/presets.hpp"

namespace bmv::presets {

Vine3Spec clayton_vine() {
  return {{BicopFamily::Clayton, 6.0}, {BicopFamily::Clayton, 7.09}, {BicopFamily::Clayton, 4.67}};
}

Vine3Spec gaussian_vine() {
  return {{BicopFamily::Gaussian, 0.71}, {BicopFamily::Gaussian, 0.78}, {BicopFamily::Gaussian, 0.52}};
}

Vine3Spec river_vine() {
  return {bicop::tau_to_param(BicopFamily::Frank, 0.76),
          bicop::tau_to_param(BicopFamily::Frank, 0.23),
          bicop::tau_to_param(BicopFamily::Gaussian, -0.18)};
}

std::vector<ScalingPlan> scaling_plans() {
  return {{1, 1, 1},        {2, 2, 2},       {1, 2, 3},    {0.5, 0.5, 0.5}, {0.3, 0.2, 0.1},
          {0.2, 5, 0.75},   {15, 20, 15},    {100, 0.1, 20}, {1.05, 0.21, 0.84}, {4, 3, 3}};
}

ScaledModel clayton_scaled() {
  return {ScalingPlan(1.05, 0.21, 0.84),
          {BicopFamily::Clayton, BicopFamily::Clayton, BicopFamily::Clayton}};
}

ScaledModel gaussian_scaled() {
  return {ScalingPlan(4, 3, 3),
          {BicopFamily::Gaussian, BicopFamily::Gaussian, BicopFamily::Gaussian}};
}

std::optional<Vine3Spec> vine(const std::string& name) {
  if (name == "clayton") return clayton_vine();
  if (name == "gaussian") return gaussian_vine();
  if (name == "river") return river_vine();
  if (name == "independence") return independence_vine();
  return std::nullopt;
}

std::optional<ScaledModel> scaled(const std::string& name) {
  if (name == "clayton-scaled") return clayton_scaled();
  if (name == "gaussian-scaled") return gaussian_scaled();
  return std::nullopt;
}

}  // namespace bmv::presets
