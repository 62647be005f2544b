#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bmv/bicop.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

/// Three numeric columns of observations.
struct Dataset {
  std::array<std::string, 3> names{"x1", "x2", "x3"};
  std::vector<Point3> rows;
};

struct PitResult {
  Dataset data;
  std::vector<Point3> pseudo;
};

struct TauFit {
  Vine3Spec spec;
  /// Empirical tau of (1,2), (2,3) and of the h-transformed (1,3) pair.
  std::array<double, 3> tau;
};

namespace dataset {

inline constexpr std::size_t kMinRows = 10;
/// Empirical taus are clamped to [-kTauLimit, kTauLimit] before inversion.
inline constexpr double kTauLimit = 1.0 - 1e-6;

/// Reads the first three columns of a delimited text file. A first line
/// whose three leading cells are all non-numeric is taken as the header.
/// Rows with an empty, NA or non-finite cell are dropped. Any other
/// non-numeric cell throws DomainError naming its row and column.
Dataset read_csv(const std::filesystem::path& path, char delimiter = ',');

/// Average ranks divided by (N+1).
std::vector<double> pseudo_observations(std::span<const double> column);

/// read_csv followed by per-column pseudo-observations; N < kMinRows throws.
PitResult ingest_pit(const std::filesystem::path& path, char delimiter = ',');
std::vector<Point3> pseudo_observations(std::span<const Point3> rows);

/// Kendall's tau-b in O(N log N).
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// Tau inversion for the pairs (1,2) and (2,3); the conditioned pair is
/// fitted on (C_{1|2}(u1|u2), C_{3|2}(u3|u2)) under the fitted first tree.
/// families = {c12, c23, c13_2}.
TauFit fit_tau(std::span<const Point3> pseudo, const std::array<BicopFamily, 3>& families);

/// Writes rows with a header line and 17 significant digits.
void write_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace dataset
}  // namespace bmv
