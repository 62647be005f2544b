#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>

#include "bmv/evscale.hpp"

namespace bmv::scaling_table {

/// Block size standing for the n -> infinity row.
inline constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
/// Printed in place of undefined values.
inline constexpr const char* kMissing = "--";

/// CSV with one row per plan (columns combination, the three lambda^2, h,
/// n_star) when n_values is empty, otherwise one row per (plan, n) with
/// the schedule columns n, rho12, rho13, rho23, rho13_2, tau12, tau23,
/// tau13_2 appended. Combinations are numbered from 1 in input order.
void write(std::ostream& out, std::span<const ScalingPlan> plans,
           std::span<const std::int64_t> n_values);

}  // namespace bmv::scaling_table
