#include "bmv/json_io.hpp"

#include <string>

#include "bmv/error.hpp"

namespace bmv {

namespace {

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing key '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw DomainError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, BicopFamily f) { j = std::string(to_string(f)); }

void from_json(const nlohmann::json& j, BicopFamily& f) {
  if (!j.is_string()) throw DomainError("family must be a string");
  f = family_from_string(j.get<std::string>());
}

void to_json(nlohmann::json& j, const BicopSpec& s) {
  j = nlohmann::json{{"family", s.family()}};
  if (s.family() != BicopFamily::Independence) {
    j["parameter"] = s.parameter();
    j["tau"] = bicop::param_to_tau(s);
  }
}

void from_json(const nlohmann::json& j, BicopSpec& s) {
  if (!j.is_object()) throw DomainError("pair copula must be a JSON object");
  if (!j.contains("family")) throw DomainError("pair copula is missing 'family'");
  const auto family = j.at("family").get<BicopFamily>();
  const bool has_param = j.contains("parameter"), has_tau = j.contains("tau");
  if (family == BicopFamily::Independence) {
    s = BicopSpec::independence();
  } else if (has_param) {
    s = BicopSpec(family, number(j, "parameter"));
  } else if (has_tau) {
    s = bicop::tau_to_param(family, number(j, "tau"));
  } else {
    throw DomainError("pair copula needs 'parameter' or 'tau'");
  }
}

void to_json(nlohmann::json& j, const Vine3Spec& v) {
  j = nlohmann::json{{"c12", v.c12}, {"c23", v.c23}, {"c13_2", v.c13_2}};
}

void from_json(const nlohmann::json& j, Vine3Spec& v) {
  if (!j.is_object()) throw DomainError("vine must be a JSON object");
  for (const char* key : {"c12", "c23", "c13_2"})
    if (!j.contains(key)) throw DomainError(std::string("vine is missing '") + key + "'");
  v.c12 = j.at("c12").get<BicopSpec>();
  v.c23 = j.at("c23").get<BicopSpec>();
  v.c13_2 = j.at("c13_2").get<BicopSpec>();
}

void to_json(nlohmann::json& j, const ScalingPlan& p) {
  j = nlohmann::json{{"lambda12_sq", p.lambda12_sq()},
                     {"lambda13_sq", p.lambda13_sq()},
                     {"lambda23_sq", p.lambda23_sq()}};
}

}  // namespace bmv

namespace nlohmann {

bmv::ScalingPlan adl_serializer<bmv::ScalingPlan>::from_json(const json& j) {
  if (!j.is_object()) throw bmv::DomainError("scaling plan must be a JSON object");
  return {bmv::number(j, "lambda12_sq"), bmv::number(j, "lambda13_sq"),
          bmv::number(j, "lambda23_sq")};
}

}  // namespace nlohmann
