#include "bmv/scaling_table.hpp"

#include <string>

#include "bmv/csv.hpp"
#include "bmv/error.hpp"

namespace bmv::scaling_table {

namespace {

void write_schedule(std::ostream& out, const ScalingPlan& plan, std::int64_t n) {
  if (n == kInfinite) {
    if (!plan.feasible()) {
      out << "inf";
      for (int k = 0; k < 7; ++k) out << ',' << kMissing;
      return;
    }
    out << "inf,1,1,1," << csv::format(evscale::limit_rho13_2(plan)) << ",1,1,"
        << csv::format(evscale::limit_tau13_2(plan));
    return;
  }
  out << n;
  try {
    const ScheduleRow r = evscale::rho_schedule(plan, n);
    for (double x : {r.rho12, r.rho13, r.rho23, r.rho13_2, r.tau12, r.tau23, r.tau13_2})
      out << ',' << csv::format(x);
  } catch (const FeasibilityError&) {
    for (int k = 0; k < 7; ++k) out << ',' << kMissing;
  }
}

}  // namespace

void write(std::ostream& out, std::span<const ScalingPlan> plans,
           std::span<const std::int64_t> n_values) {
  if (plans.empty()) throw DomainError("scaling table needs at least one plan");
  for (auto n : n_values)
    if (n < 2) throw DomainError("scaling table block sizes must be >= 2");
  out << "combination,lambda12_sq,lambda13_sq,lambda23_sq,h,n_star";
  if (!n_values.empty()) out << ",n,rho12,rho13,rho23,rho13_2,tau12,tau23,tau13_2";
  out << '\n';
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const ScalingPlan& p = plans[i];
    const std::string head = std::to_string(i + 1) + ',' + csv::format(p.lambda12_sq()) + ',' +
                             csv::format(p.lambda13_sq()) + ',' +
                             csv::format(p.lambda23_sq()) + ',' + csv::format(p.h_value()) +
                             ',' + (p.n_star() ? std::to_string(*p.n_star()) : kMissing);
    if (n_values.empty()) {
      out << head << '\n';
      continue;
    }
    for (auto n : n_values) {
      out << head << ',';
      write_schedule(out, p, n);
      out << '\n';
    }
  }
}

}  // namespace bmv::scaling_table
