#include <doctest.h>

#include <cmath>

#include "bmv/blockmax.hpp"
#include "bmv/error.hpp"
#include "bmv/kernels.hpp"
#include "bmv/mc_validate.hpp"
#include "bmv/presets.hpp"

using namespace bmv;

TEST_CASE("independence maxima pass the law check") {
  const auto r = mc::validate(independence_vine(), 5, 100000, 7);
  CHECK(r.threshold == doctest::Approx(3.0 / std::sqrt(1e5)));
  CHECK(r.sup_distance <= 0.0095);
  CHECK(r.pass);
}

TEST_CASE("Clayton example maxima pass the law check") {
  const auto r = mc::validate(presets::clayton_vine(), 10, 100000, 8);
  CHECK(r.pass);
  CHECK(r.cvm_distance >= 0.0);
}

TEST_CASE("report is reproducible and matches a direct computation") {
  const auto spec = presets::gaussian_vine();
  const auto a = mc::validate(spec, 4, 2000, 99);
  const auto b = mc::validate(spec, 4, 2000, 99);
  CHECK(a.sup_distance == b.sup_distance);
  CHECK(a.cvm_distance == b.cvm_distance);

  std::vector<Point3> maxima(2000);
  kernels::serial::block_maxima(spec, 4, 99, maxima);
  const auto model = BlockMaxModel::from_vine(spec, 4);
  double sup = 0.0, sq = 0.0;
  for (int i = 1; i <= 9; ++i)
    for (int j = 1; j <= 9; ++j)
      for (int k = 1; k <= 9; ++k) {
        const Point3 g{i / 10.0, j / 10.0, k / 10.0};
        double count = 0;
        for (const auto& m : maxima)
          if (m[0] <= g[0] && m[1] <= g[1] && m[2] <= g[2]) count += 1;
        const double diff = count / 2000.0 - blockmax::max_copula_cdf(model, g);
        sup = std::max(sup, std::abs(diff));
        sq += diff * diff;
      }
  CHECK(a.sup_distance == doctest::Approx(sup).epsilon(1e-12));
  CHECK(a.cvm_distance == doctest::Approx(2000.0 * sq / 729.0).epsilon(1e-10));
}

TEST_CASE("law check input errors") {
  CHECK_THROWS_AS(mc::validate(independence_vine(), 5, 999, 1), DomainError);
  CHECK_THROWS_AS(mc::validate(independence_vine(), 0, 1000, 1), DomainError);
}
