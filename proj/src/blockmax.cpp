#include "bmv/blockmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bmv/error.hpp"
#include "bmv/normal.hpp"

namespace bmv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log Phi(x) without losing the upper tail.
double log_phi_cdf(double x) {
  if (x > 0.0) return std::log1p(-normal::cdf(-x));
  return std::log(normal::cdf(x));
}

double log_phi_pdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

void check_arity(const BlockMaxModel& m, std::size_t size) {
  if (static_cast<int>(size) != m.dimension()) {
    throw DomainError("expected " + std::to_string(m.dimension()) + " coordinates, got " +
                      std::to_string(size));
  }
}

}  // namespace

// ------------------------------------------------------------------ providers

void PartialProvider::fill(std::span<const double> u, std::span<const SubsetMask> masks,
                           std::span<double> table) const {
  table[0] = cdf(u);
  for (SubsetMask s : masks) table[s] = partial(s, u);
}

Vine3Provider::Vine3Provider(Vine3Spec spec, QuadratureConfig q)
    : spec_(std::move(spec)), q_(q) {
  q_.validate();
}

double Vine3Provider::cdf(std::span<const double> u) const {
  return vine3::cdf(spec_, u[0], u[1], u[2], q_);
}

double Vine3Provider::partial(SubsetMask m, std::span<const double> u) const {
  return vine3::partial(spec_, m, {u[0], u[1], u[2]}, q_);
}

void Vine3Provider::fill(std::span<const double> u, std::span<const SubsetMask>,
                         std::span<double> table) const {
  const auto all = vine3::all_partials(spec_, {u[0], u[1], u[2]}, q_);
  std::copy(all.begin(), all.end(), table.begin());
}

IndependenceProvider::IndependenceProvider(int d) : d_(d) {
  if (d < 1 || d > partition::kMaxDimension) {
    throw DomainError("independence provider: dimension " + std::to_string(d) +
                      " out of range");
  }
}

double IndependenceProvider::cdf(std::span<const double> u) const {
  double p = 1.0;
  for (double x : u) p *= x;
  return p;
}

double IndependenceProvider::partial(SubsetMask m, std::span<const double> u) const {
  double p = 1.0;
  for (int j = 0; j < d_; ++j) {
    if (!(m & (SubsetMask{1} << j))) p *= u[j];
  }
  return p;
}

// ---------------------------------------------------------------------- model

BlockMaxModel::BlockMaxModel(std::shared_ptr<const PartialProvider> base, std::int64_t n)
    : base_(std::move(base)), n_(n) {
  if (!base_) throw DomainError("block-maxima model needs a base copula");
  if (n_ < 1) throw DomainError("block size n must be >= 1, got " + std::to_string(n_));
  d_ = base_->dimension();
  if (d_ < 2 || d_ > partition::kMaxDimension) {
    throw DomainError("block-maxima model dimension " + std::to_string(d_) +
                      " outside [2, " + std::to_string(partition::kMaxDimension) + "]");
  }
  const int jmax = static_cast<int>(std::min<std::int64_t>(d_, n_));
  std::vector<bool> seen(SubsetMask{1} << d_, false);
  for (int j = 1; j <= jmax; ++j) {
    auto& level = partitions_.emplace_back();
    for (const auto& p : partition::enumerate(d_, j)) {
      auto masks = p.masks();
      for (SubsetMask s : masks) seen[s] = true;
      level.push_back(std::move(masks));
    }
  }
  for (SubsetMask s = 1; s < seen.size(); ++s) {
    if (seen[s]) needed_.push_back(s);
  }
}

BlockMaxModel BlockMaxModel::from_vine(const Vine3Spec& spec, std::int64_t n,
                                       const QuadratureConfig& q) {
  return {std::make_shared<Vine3Provider>(spec, q), n};
}

// ------------------------------------------------------------------ formulas

namespace blockmax {

double log_falling_factorial(std::int64_t n, int j) {
  double prod = 1.0;
  for (int i = 0; i < j; ++i) prod *= static_cast<double>(n - i);
  return std::log(prod);
}

double log_partition_sum(const BlockMaxModel& m, std::span<const double> v) {
  check_arity(m, v.size());
  const PartialProvider& base = m.base();
  std::vector<double> dm(SubsetMask{1} << m.dimension(), 0.0);
  base.fill(v, m.needed_subsets(), dm);
  const double c = dm[0];
  const double log_c = c > 0.0 ? std::log(c) : kNegInf;

  // log-sum-exp across j; inner partition sums are nonnegative
  std::vector<double> logs;
  logs.reserve(m.max_blocks());
  for (int j = 1; j <= m.max_blocks(); ++j) {
    const std::int64_t power = m.n() - j;
    if (power > 0 && log_c == kNegInf) continue;
    double inner = 0.0;
    for (const auto& blocks : m.partitions(j)) {
      double prod = 1.0;
      for (SubsetMask s : blocks) prod *= dm[s];
      inner += prod;
    }
    if (!(inner > 0.0)) continue;
    const double pow_term = power > 0 ? static_cast<double>(power) * log_c : 0.0;
    logs.push_back(log_falling_factorial(m.n(), j) + pow_term + std::log(inner));
  }
  if (logs.empty()) return kNegInf;
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return top + std::log(acc);
}

double max_copula_cdf(const BlockMaxModel& m, std::span<const double> u) {
  check_arity(m, u.size());
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = std::clamp(u[j], 0.0, 1.0);
    if (x == 0.0) return 0.0;
    v[j] = std::exp(std::log(x) / static_cast<double>(m.n()));
  }
  const double c = m.base().cdf(v);
  if (c <= 0.0) return 0.0;
  return std::exp(static_cast<double>(m.n()) * std::log(c));
}

double max_copula_pdf(const BlockMaxModel& m, std::span<const double> u) {
  check_arity(m, u.size());
  const double inv_n = 1.0 / static_cast<double>(m.n());
  std::vector<double> v(u.size());
  double log_prod_u = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    // u = 0 would make the prefactor infinite; pull it to the smallest normal
    const double lu = std::log(std::clamp(u[j], std::numeric_limits<double>::min(), 1.0));
    log_prod_u += lu;
    v[j] = std::exp(lu * inv_n);
  }
  const double log_sum = log_partition_sum(m, v);
  if (log_sum == kNegInf) return 0.0;
  const double d = static_cast<double>(m.dimension());
  return std::exp(-d * std::log(static_cast<double>(m.n())) + (inv_n - 1.0) * log_prod_u +
                  log_sum);
}

double marginal_cdf_z(std::int64_t n, double z) {
  if (n < 1) throw DomainError("block size n must be >= 1");
  return std::exp(static_cast<double>(n) * log_phi_cdf(z));
}

double marginal_pdf_z(std::int64_t n, double z) {
  if (n < 1) throw DomainError("block size n must be >= 1");
  const double nd = static_cast<double>(n);
  const double power = n == 1 ? 0.0 : (nd - 1.0) * log_phi_cdf(z);
  return std::exp(std::log(nd) + power + log_phi_pdf(z));
}

double joint_pdf_z(const BlockMaxModel& m, std::span<const double> z) {
  check_arity(m, z.size());
  std::vector<double> v(z.size());
  double log_dens = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!std::isfinite(z[j])) throw DomainError("joint_pdf_z: non-finite coordinate");
    v[j] = normal::cdf(z[j]);
    log_dens += log_phi_pdf(z[j]);
  }
  const double log_sum = log_partition_sum(m, v);
  if (log_sum == kNegInf) return 0.0;
  return std::exp(log_dens + log_sum);
}

}  // namespace blockmax
}  // namespace bmv
