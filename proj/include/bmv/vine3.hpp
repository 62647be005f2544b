#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bmv/bicop.hpp"
#include "bmv/partition.hpp"
#include "bmv/quadrature.hpp"

namespace bmv {

using Point3 = std::array<double, 3>;

/// Three-dimensional D-vine on the order (1,2,3): pairs (1,2) and (2,3) in
/// the first tree, (1,3) conditioned on 2 in the second. Simplified vine,
/// so c13_2 does not depend on the conditioning value.
struct Vine3Spec {
  BicopSpec c12;
  BicopSpec c23;
  BicopSpec c13_2;

  friend bool operator==(const Vine3Spec&, const Vine3Spec&) = default;
};

/// Every pair copula is independence.
inline Vine3Spec independence_vine() { return {}; }

namespace vine3 {

// Quantities needing an integral over v2 in [0, u2] take a QuadratureConfig
// and throw NumericalError when it cannot be met. The rest are closed forms.

double cdf(const Vine3Spec& v, double u1, double u2, double u3,
           const QuadratureConfig& q = {});

double d1(const Vine3Spec& v, double u1, double u2, double u3,
          const QuadratureConfig& q = {});
double d2(const Vine3Spec& v, double u1, double u2, double u3);
double d3(const Vine3Spec& v, double u1, double u2, double u3,
          const QuadratureConfig& q = {});

double d12(const Vine3Spec& v, double u1, double u2, double u3);
double d13(const Vine3Spec& v, double u1, double u2, double u3,
           const QuadratureConfig& q = {});
double d23(const Vine3Spec& v, double u1, double u2, double u3);

double pdf(const Vine3Spec& v, double u1, double u2, double u3);

/// cdf (index 0) and every mixed partial, indexed by subset mask. The four
/// integrals share one adaptive mesh over v2.
std::array<double, 8> all_partials(const Vine3Spec& v, const Point3& u,
                                   const QuadratureConfig& q = {});

/// Mixed partial over the variables in `m` (nonempty subset of {1,2,3}).
double partial(const Vine3Spec& v, SubsetMask m, const Point3& u,
               const QuadratureConfig& q = {});

/// i.i.d. draws by conditional inversion along the vine. Deterministic in
/// (seed, count) and independent of the number of worker threads.
std::vector<Point3> sample(const Vine3Spec& v, std::size_t count, std::uint64_t seed);

/// Maps three independent uniforms to one vine draw.
Point3 transform_uniforms(const Vine3Spec& v, const Point3& w);

}  // namespace vine3
}  // namespace bmv
