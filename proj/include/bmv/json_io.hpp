#pragma once

#include "json.hpp"

#include "bmv/bicop.hpp"
#include "bmv/evscale.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

/// {"family": name, "parameter": x} or {"family": name, "tau": t}.
void to_json(nlohmann::json& j, const BicopSpec& s);
void from_json(const nlohmann::json& j, BicopSpec& s);

/// {"c12": pair, "c23": pair, "c13_2": pair}.
void to_json(nlohmann::json& j, const Vine3Spec& v);
void from_json(const nlohmann::json& j, Vine3Spec& v);

void to_json(nlohmann::json& j, const ScalingPlan& p);

void to_json(nlohmann::json& j, BicopFamily f);
void from_json(const nlohmann::json& j, BicopFamily& f);

}  // namespace bmv

namespace nlohmann {
template <>
struct adl_serializer<bmv::ScalingPlan> {
  /// {"lambda12_sq": a, "lambda13_sq": b, "lambda23_sq": c}.
  static bmv::ScalingPlan from_json(const json& j);
  static void to_json(json& j, const bmv::ScalingPlan& p) { bmv::to_json(j, p); }
};
}  // namespace nlohmann
