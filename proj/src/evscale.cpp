#include "bmv/evscale.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bmv/error.hpp"
#include "bmv/normal.hpp"

namespace bmv {

namespace {

double log_phi_cdf(double x) {
  if (x > 0.0) return std::log1p(-normal::cdf(-x));
  return std::log(normal::cdf(x));
}

double tau_of_rho(double rho) { return 2.0 / std::numbers::pi * std::asin(rho); }

void require_bn_domain(std::int64_t n) {
  if (n < 2) throw DomainError("scaled block maxima need n >= 2, got " + std::to_string(n));
}

}  // namespace

ScalingPlan::ScalingPlan(double lambda12_sq, double lambda13_sq, double lambda23_sq)
    : l12_(lambda12_sq), l13_(lambda13_sq), l23_(lambda23_sq) {
  for (double l : {l12_, l13_, l23_}) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      std::ostringstream msg;
      msg << "lambda^2 values must be positive and finite, got (" << l12_ << ", " << l13_
          << ", " << l23_ << ")";
      throw DomainError(msg.str());
    }
  }
  h_ = 2.0 * (l12_ * l13_ + l12_ * l23_ + l13_ * l23_) - (l12_ * l12_ + l13_ * l13_ + l23_ * l23_);
  if (h_ > 0.0) {
    const double n = std::floor(std::exp(2.0 * l12_ * l13_ * l23_ / h_) + 1.0);
    constexpr double cap = static_cast<double>(std::numeric_limits<std::int64_t>::max());
    n_star_ = n >= cap ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(n);
  }
}

namespace evscale {

double solve_bn(std::int64_t n) {
  require_bn_domain(n);
  const double nd = static_cast<double>(n);
  auto g = [nd](double b) { return b - nd * normal::pdf(b); };
  double lo = 1e-8;
  double hi = std::sqrt(2.0 * std::log(nd)) + 2.0;
  if (!(g(lo) < 0.0 && g(hi) > 0.0)) {
    throw NumericalError("b_n bracket does not straddle the root for n=" + std::to_string(n));
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double b = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    // g'(b) = 1 + b n phi(b)
    b -= g(b) / (1.0 + b * nd * normal::pdf(b));
  }
  return b;
}

double scaled_marginal_cdf(std::int64_t n, double w) {
  const double b = solve_bn(n);
  return std::exp(static_cast<double>(n) * log_phi_cdf(b + w / b));
}

double scaled_marginal_pdf(std::int64_t n, double w) {
  const double b = solve_bn(n);
  const double x = b + w / b;
  const double nd = static_cast<double>(n);
  return std::exp(std::log(nd / b) + (nd - 1.0) * log_phi_cdf(x) - 0.5 * x * x -
                  0.5 * std::log(2.0 * std::numbers::pi));
}

double scaled_marginal_quantile(std::int64_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("scaled quantile: p must lie in (0,1)");
  const double b = solve_bn(n);
  const double root = std::exp(std::log(p) / static_cast<double>(n));
  return b * (normal::quantile(root) - b);
}

double correlation_determinant(double r12, double r13, double r23) noexcept {
  return 1.0 + 2.0 * r12 * r13 * r23 - r12 * r12 - r13 * r13 - r23 * r23;
}

Feasibility feasibility(const ScalingPlan& plan) noexcept {
  return {plan.h_value(), plan.n_star()};
}

ScheduleRow rho_schedule(const ScalingPlan& plan, std::int64_t n) {
  if (!plan.feasible()) {
    std::ostringstream msg;
    msg << "scaling plan (" << plan.lambda12_sq() << ", " << plan.lambda13_sq() << ", "
        << plan.lambda23_sq() << ") is infeasible: h = " << plan.h_value() << " <= 0";
    throw FeasibilityError(msg.str(), 0);
  }
  const std::int64_t n_star = *plan.n_star();
  if (n < std::max<std::int64_t>(n_star, 2)) {
    throw FeasibilityError("block size n=" + std::to_string(n) + " below n*=" +
                               std::to_string(n_star) + " for this scaling plan",
                           n_star);
  }
  const double log_n = std::log(static_cast<double>(n));
  ScheduleRow row{};
  row.n = n;
  row.rho12 = 1.0 - plan.lambda12_sq() / log_n;
  row.rho13 = 1.0 - plan.lambda13_sq() / log_n;
  row.rho23 = 1.0 - plan.lambda23_sq() / log_n;
  if (!(std::abs(row.rho12) < 1.0 && std::abs(row.rho23) < 1.0 &&
        correlation_determinant(row.rho12, row.rho13, row.rho23) > 0.0)) {
    throw FeasibilityError("correlation matrix not positive definite at n=" + std::to_string(n),
                           n_star);
  }
  row.rho13_2 = (row.rho13 - row.rho12 * row.rho23) /
                (std::sqrt(1.0 - row.rho12 * row.rho12) * std::sqrt(1.0 - row.rho23 * row.rho23));
  row.tau12 = tau_of_rho(row.rho12);
  row.tau23 = tau_of_rho(row.rho23);
  row.tau13_2 = tau_of_rho(row.rho13_2);
  return row;
}

double limit_rho13_2(const ScalingPlan& plan) {
  const double r = (plan.lambda12_sq() + plan.lambda23_sq() - plan.lambda13_sq()) /
                   (2.0 * std::sqrt(plan.lambda12_sq() * plan.lambda23_sq()));
  if (std::abs(r) > 1.0) {
    std::ostringstream msg;
    msg << "limiting partial correlation " << r << " outside [-1, 1] (plan infeasible)";
    throw DomainError(msg.str());
  }
  return r;
}

double limit_tau13_2(const ScalingPlan& plan) { return tau_of_rho(limit_rho13_2(plan)); }

Vine3Spec vine_params_for_n(const ScalingPlan& plan, std::int64_t n,
                            const std::array<BicopFamily, 3>& families) {
  const ScheduleRow row = rho_schedule(plan, n);
  auto map = [&](BicopFamily f, double tau, const char* pair) {
    try {
      return bicop::tau_to_param(f, tau);
    } catch (const DomainError& e) {
      throw DomainError(std::string("pair ") + pair + " at n=" + std::to_string(n) + ": " +
                        e.what());
    }
  };
  return {map(families[0], row.tau12, "(1,2)"), map(families[1], row.tau23, "(2,3)"),
          map(families[2], row.tau13_2, "(1,3;2)")};
}

double scaled_joint_pdf(const BlockMaxModel& m, std::span<const double> w) {
  const double b = solve_bn(m.n());
  std::vector<double> u(w.size());
  double log_dens = -static_cast<double>(w.size()) * std::log(b);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!std::isfinite(w[j])) throw DomainError("scaled_joint_pdf: non-finite coordinate");
    const double x = b + w[j] / b;
    u[j] = normal::cdf(x);
    log_dens += -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double log_sum = blockmax::log_partition_sum(m, u);
  if (std::isinf(log_sum)) return 0.0;
  return std::exp(log_dens + log_sum);
}

}  // namespace evscale
}  // namespace bmv
