#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "bmv/evscale.hpp"
#include "bmv/quadrature.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

struct GridAxis {
  double min = -3.0;
  double max = 3.0;
  int count = 101;
  /// Throws DomainError unless count >= 2 and min < max.
  void validate() const;
  double at(int i) const;
};

/// Parses "min:max:count".
GridAxis parse_grid_axis(const std::string& text);

/// Pair copulas at block size n come from the correlation schedule of the
/// plan, inverted per family.
struct ScaledModel {
  ScalingPlan plan;
  std::array<BicopFamily, 3> families;
};

enum class SliceMode { Z, W };

/// Density reported on the z-scale: the max-copula density with standard
/// normal margins, or the joint density of the maxima (margins Phi^n).
enum class ZDensity { Copula, Joint };

struct SliceRequest {
  std::variant<Vine3Spec, ScaledModel> model;
  std::vector<std::int64_t> n_values;
  std::vector<double> axis3_quantiles{0.2, 0.5, 0.8};
  std::array<GridAxis, 2> grid{};
  ZDensity z_density = ZDensity::Copula;
  QuadratureConfig quadrature{};
  std::filesystem::path output_dir;

  SliceMode mode() const noexcept {
    return std::holds_alternative<Vine3Spec>(model) ? SliceMode::Z : SliceMode::W;
  }
  /// Axis defaults for the mode: [-3,3] on z, [-2,6] on w, 101 points.
  static std::array<GridAxis, 2> default_grid(SliceMode mode);
  void validate() const;
};

struct SliceFile {
  std::filesystem::path path;
  std::int64_t n;
  double quantile;
  double axis3;
  Vine3Spec vine;
};

namespace slices {

inline constexpr const char* kManifest = "manifest.json";

/// Pair copulas evaluated for block size n.
Vine3Spec vine_for(const SliceRequest& req, std::int64_t n);

/// Value of the third coordinate for quantile q: Phi^{-1}(q) on the copula
/// z-scale, the quantile of Phi^n on the joint z-scale, the quantile of the
/// scaled marginal on the w-scale.
double axis3_value(const SliceRequest& req, std::int64_t n, double q);

/// Independence-model density factor of one coordinate in the same units
/// as the emitted density.
double independence_factor(const SliceRequest& req, std::int64_t n, double x);

/// One CSV per (n, quantile) plus the manifest. Files already written are
/// removed when any evaluation or write fails.
std::vector<SliceFile> emit(const SliceRequest& req);

}  // namespace slices
}  // namespace bmv
