#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bmv/partition.hpp"
#include "bmv/quadrature.hpp"
#include "bmv/vine3.hpp"

namespace bmv {

/// Source of a d-dimensional copula CDF and all of its mixed partial
/// derivatives d^|M| C / prod_{m in M} du_m, M a nonempty subset of {1..d}.
class PartialProvider {
 public:
  virtual ~PartialProvider() = default;
  virtual int dimension() const noexcept = 0;
  virtual double cdf(std::span<const double> u) const = 0;
  virtual double partial(SubsetMask m, std::span<const double> u) const = 0;

  /// table[0] = cdf(u) and table[s] = partial(s, u) for s in `masks`.
  /// Providers that share work across partials override this.
  virtual void fill(std::span<const double> u, std::span<const SubsetMask> masks,
                    std::span<double> table) const;
};

class Vine3Provider final : public PartialProvider {
 public:
  explicit Vine3Provider(Vine3Spec spec, QuadratureConfig q = {});

  int dimension() const noexcept override { return 3; }
  double cdf(std::span<const double> u) const override;
  void fill(std::span<const double> u, std::span<const SubsetMask> masks,
            std::span<double> table) const override;
  double partial(SubsetMask m, std::span<const double> u) const override;

  const Vine3Spec& spec() const noexcept { return spec_; }
  const QuadratureConfig& quadrature() const noexcept { return q_; }

 private:
  Vine3Spec spec_;
  QuadratureConfig q_;
};

class IndependenceProvider final : public PartialProvider {
 public:
  explicit IndependenceProvider(int d);

  int dimension() const noexcept override { return d_; }
  double cdf(std::span<const double> u) const override;
  double partial(SubsetMask m, std::span<const double> u) const override;

 private:
  int d_;
};

/// Base copula plus block size n. Precomputes the partitions of {1..d}
/// into j blocks for every j <= min(d, n); they are shared read-only.
class BlockMaxModel {
 public:
  BlockMaxModel(std::shared_ptr<const PartialProvider> base, std::int64_t n);

  static BlockMaxModel from_vine(const Vine3Spec& spec, std::int64_t n,
                                 const QuadratureConfig& q = {});

  const PartialProvider& base() const noexcept { return *base_; }
  std::shared_ptr<const PartialProvider> base_ptr() const noexcept { return base_; }
  std::int64_t n() const noexcept { return n_; }
  int dimension() const noexcept { return d_; }

  /// Block masks of every partition with j blocks, j = 1..min(d,n).
  const std::vector<std::vector<SubsetMask>>& partitions(int j) const {
    return partitions_.at(j - 1);
  }
  int max_blocks() const noexcept { return static_cast<int>(partitions_.size()); }
  /// Subsets whose partial derivative enters the density.
  const std::vector<SubsetMask>& needed_subsets() const noexcept { return needed_; }

 private:
  std::shared_ptr<const PartialProvider> base_;
  std::int64_t n_;
  int d_;
  std::vector<std::vector<std::vector<SubsetMask>>> partitions_;
  std::vector<SubsetMask> needed_;
};

namespace blockmax {

/// log n!/(n-j)!, accumulated as a product of j factors.
double log_falling_factorial(std::int64_t n, int j);

/// log of sum_{j<=d^n} n!/(n-j)! C(v)^{n-j} sum_{P in S_{d,j}} prod_{M in P} d_M C(v),
/// the bracket shared by the copula density, the z-scale density and the
/// scaled density. -inf when every term vanishes.
double log_partition_sum(const BlockMaxModel& m, std::span<const double> v);

/// C(u^{1/n})^n.
double max_copula_cdf(const BlockMaxModel& m, std::span<const double> u);

/// Density of the block-maxima copula at u in (0,1)^d.
double max_copula_pdf(const BlockMaxModel& m, std::span<const double> u);

/// Phi(z)^n and n Phi(z)^{n-1} phi(z).
double marginal_cdf_z(std::int64_t n, double z);
double marginal_pdf_z(std::int64_t n, double z);

/// Joint density of the componentwise maxima of n standard-normal-margin
/// draws at z.
double joint_pdf_z(const BlockMaxModel& m, std::span<const double> z);

}  // namespace blockmax
}  // namespace bmv
