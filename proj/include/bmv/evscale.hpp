#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "bmv/bicop.hpp"
#include "bmv/blockmax.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

/// Squared scaling constants lambda_ij^2 of the correlation schedule
/// rho_ij(n) = 1 - lambda_ij^2 / log n. Derived quantities are computed on
/// construction: h and, when h > 0, the smallest admissible block size.
class ScalingPlan {
 public:
  ScalingPlan(double lambda12_sq, double lambda13_sq, double lambda23_sq);

  double lambda12_sq() const noexcept { return l12_; }
  double lambda13_sq() const noexcept { return l13_; }
  double lambda23_sq() const noexcept { return l23_; }

  /// 2(a b + a c + b c) - (a^2 + b^2 + c^2) with (a,b,c) the lambda^2 values.
  double h_value() const noexcept { return h_; }
  /// floor(exp(2 a b c / h) + 1) when h > 0; saturates at INT64_MAX.
  std::optional<std::int64_t> n_star() const noexcept { return n_star_; }
  bool feasible() const noexcept { return n_star_.has_value(); }

 private:
  double l12_, l13_, l23_;
  double h_;
  std::optional<std::int64_t> n_star_;
};

struct Feasibility {
  double h_value;
  std::optional<std::int64_t> n_star;
};

struct ScheduleRow {
  std::int64_t n;
  double rho12, rho13, rho23, rho13_2;
  double tau12, tau23, tau13_2;
};

namespace evscale {

/// Unique positive root of b = n phi(b), n >= 2.
double solve_bn(std::int64_t n);

/// Phi^n(b_n + w/b_n) and its density (n/b_n) Phi^{n-1}(.) phi(.).
double scaled_marginal_cdf(std::int64_t n, double w);
double scaled_marginal_pdf(std::int64_t n, double w);
/// Inverse of scaled_marginal_cdf, p in (0,1).
double scaled_marginal_quantile(std::int64_t n, double p);

/// 1 + 2 r12 r13 r23 - r12^2 - r13^2 - r23^2.
double correlation_determinant(double r12, double r13, double r23) noexcept;

Feasibility feasibility(const ScalingPlan& plan) noexcept;

/// Correlations, partial correlation rho13;2 and their Kendall's taus at
/// block size n. Throws FeasibilityError when n < max(n*, 2) or the plan
/// is infeasible.
ScheduleRow rho_schedule(const ScalingPlan& plan, std::int64_t n);

/// Limits of rho13;2(n) and tau13;2(n) as n grows.
double limit_rho13_2(const ScalingPlan& plan);
double limit_tau13_2(const ScalingPlan& plan);

/// Pair-copula parameters at block size n from tau-inversion of the
/// schedule. families = {c12, c23, c13_2}.
Vine3Spec vine_params_for_n(const ScalingPlan& plan, std::int64_t n,
                            const std::array<BicopFamily, 3>& families);

/// Joint density of the scaled maxima W_j = b_n (M_j - b_n) at w.
double scaled_joint_pdf(const BlockMaxModel& m, std::span<const double> w);

}  // namespace evscale
}  // namespace bmv
