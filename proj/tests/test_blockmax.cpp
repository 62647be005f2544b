#include <doctest.h>

#include <cmath>
#include <memory>

#include "bmv/blockmax.hpp"
#include "bmv/error.hpp"
#include "bmv/kernels.hpp"
#include "oracles.hpp"
#include "mc_normalization.hpp"
#include "test_providers.hpp"

using namespace bmv;
using oracle::rel_err;

namespace {

const QuadratureConfig kTight{1e-13, 1e-12, 500};

Vine3Spec mixed_vine() {
  return {bicop::tau_to_param(BicopFamily::Clayton, 0.5),
          bicop::tau_to_param(BicopFamily::Gumbel, 0.4),
          bicop::tau_to_param(BicopFamily::Frank, -0.3)};
}

Vine3Spec clayton_vine(double delta) {
  return {{BicopFamily::Clayton, delta},
          {BicopFamily::Clayton, delta},
          {BicopFamily::Clayton, delta / (1.0 + delta)}};
}

BlockMaxModel clayton_model(int d, double delta, std::int64_t n) {
  return {std::make_shared<oracle::ClaytonProvider>(d, delta), n};
}

}  // namespace

TEST_CASE("model construction") {
  const auto m1 = BlockMaxModel::from_vine(mixed_vine(), 1);
  CHECK(m1.max_blocks() == 1);
  CHECK(m1.needed_subsets() == std::vector<SubsetMask>{0b111});
  const auto m2 = BlockMaxModel::from_vine(mixed_vine(), 2);
  CHECK(m2.max_blocks() == 2);
  CHECK(m2.needed_subsets().size() == 7);
  CHECK(m2.partitions(2).size() == 3);
  const auto m50 = BlockMaxModel::from_vine(mixed_vine(), 50);
  CHECK(m50.max_blocks() == 3);
  CHECK(clayton_model(5, 1.0, 3).max_blocks() == 3);
  CHECK(clayton_model(5, 1.0, 3).needed_subsets().size() == 31);

  CHECK_THROWS_AS(BlockMaxModel::from_vine(mixed_vine(), 0), DomainError);
  CHECK_THROWS_AS(BlockMaxModel(nullptr, 3), DomainError);
  CHECK_THROWS_AS(BlockMaxModel(std::make_shared<IndependenceProvider>(1), 3), DomainError);
  CHECK_THROWS_AS(IndependenceProvider(13), DomainError);
  const std::vector<double> two{0.5, 0.5};
  CHECK_THROWS_AS(blockmax::max_copula_pdf(m2, two), DomainError);
}

TEST_CASE("falling factorial") {
  CHECK(blockmax::log_falling_factorial(10, 0) == 0.0);
  CHECK(blockmax::log_falling_factorial(10, 3) == doctest::Approx(std::log(720.0)));
  CHECK(blockmax::log_falling_factorial(1000000000000, 3) ==
        doctest::Approx(3 * std::log(1e12)).epsilon(1e-12));
}

TEST_CASE("block size one returns the base copula") {
  const auto v = mixed_vine();
  const auto m = BlockMaxModel::from_vine(v, 1, kTight);
  oracle::Uniform rng(21);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> u{rng(0.05, 0.95), rng(0.05, 0.95), rng(0.05, 0.95)};
    CHECK(rel_err(blockmax::max_copula_pdf(m, u), vine3::pdf(v, u[0], u[1], u[2])) <= 1e-13);
    CHECK(rel_err(blockmax::max_copula_cdf(m, u), vine3::cdf(v, u[0], u[1], u[2], kTight)) <=
          1e-13);
  }
}

TEST_CASE("independence is preserved under maxima") {
  for (int d : {2, 3, 5}) {
    const BlockMaxModel m(std::make_shared<IndependenceProvider>(d), 37);
    oracle::Uniform rng(22);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> u(d);
      double prod = 1.0;
      for (auto& x : u) prod *= (x = rng());
      CHECK(blockmax::max_copula_pdf(m, u) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(blockmax::max_copula_cdf(m, u) == doctest::Approx(prod).epsilon(1e-12));
    }
  }
  const auto vm = BlockMaxModel::from_vine(independence_vine(), 10);
  const std::vector<double> u{0.2, 0.5, 0.9};
  CHECK(blockmax::max_copula_pdf(vm, u) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("density matches the term-by-term expansion") {
  const Vine3Spec vines[] = {mixed_vine(), clayton_vine(2.0),
                             {bicop::tau_to_param(BicopFamily::Gaussian, 0.5),
                              bicop::tau_to_param(BicopFamily::Gaussian, -0.2),
                              bicop::tau_to_param(BicopFamily::Gaussian, 0.3)}};
  oracle::Uniform rng(23);
  for (const auto& v : vines) {
    for (std::int64_t n : {2, 3, 10, 50, 1000}) {
      const auto m = BlockMaxModel::from_vine(v, n, kTight);
      for (int i = 0; i < 4; ++i) {
        const Point3 u{rng(0.05, 0.95), rng(0.05, 0.95), rng(0.05, 0.95)};
        CAPTURE(n); CAPTURE(describe(v.c12));
        CHECK(rel_err(blockmax::max_copula_pdf(m, u), oracle::expanded_density3(v, n, u, kTight)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("density is the mixed derivative of the maxima copula") {
  SUBCASE("vine, three dimensions") {
    const auto v = mixed_vine();
    for (std::int64_t n : {2, 5}) {
      const auto m = BlockMaxModel::from_vine(v, n, kTight);
      auto CM = [&](double a, double b, double c) {
        const std::vector<double> u{a, b, c};
        return blockmax::max_copula_cdf(m, u);
      };
      const std::vector<double> u{0.4, 0.6, 0.7};
      CAPTURE(n);
      CHECK(rel_err(blockmax::max_copula_pdf(m, u), oracle::fd3(CM, 0.4, 0.6, 0.7)) <= 1e-3);
    }
  }
  SUBCASE("closed-form Clayton, four and five dimensions") {
    oracle::Uniform rng(24);
    for (int d : {3, 4, 5}) {
      for (std::int64_t n : {1, 2, 4, 20}) {
        const auto m = clayton_model(d, 1.5, n);
        std::vector<double> u(d);
        for (auto& x : u) x = rng(0.3, 0.8);
        auto CM = [&](std::span<const double> x) { return blockmax::max_copula_cdf(m, x); };
        CAPTURE(d); CAPTURE(n);
        CHECK(rel_err(blockmax::max_copula_pdf(m, u), oracle::fd_all(CM, u)) <= 2e-3);
      }
    }
  }
  SUBCASE("vine and closed form agree") {
    const auto vm = BlockMaxModel::from_vine(clayton_vine(1.5), 7, kTight);
    const auto cm = clayton_model(3, 1.5, 7);
    const std::vector<double> u{0.25, 0.5, 0.8};
    CHECK(rel_err(blockmax::max_copula_pdf(vm, u), blockmax::max_copula_pdf(cm, u)) <= 1e-8);
  }
}

TEST_CASE("maxima copula has uniform margins") {
  const auto m = BlockMaxModel::from_vine(mixed_vine(), 25);
  for (double x : {0.01, 0.3, 0.77, 1.0}) {
    const std::vector<double> a{x, 1.0, 1.0}, b{1.0, x, 1.0}, c{1.0, 1.0, x};
    CHECK(blockmax::max_copula_cdf(m, a) == doctest::Approx(x).epsilon(1e-12));
    CHECK(blockmax::max_copula_cdf(m, b) == doctest::Approx(x).epsilon(1e-12));
    CHECK(blockmax::max_copula_cdf(m, c) == doctest::Approx(x).epsilon(1e-12));
  }
  const std::vector<double> zero{0.0, 0.5, 0.5};
  CHECK(blockmax::max_copula_cdf(m, zero) == 0.0);
}

TEST_CASE("normal-scale density factorizes") {
  const auto m = BlockMaxModel::from_vine(mixed_vine(), 10);
  oracle::Uniform rng(25);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> z{rng(-1, 3), rng(-1, 3), rng(-1, 3)};
    std::vector<double> u(3);
    double margins = 1.0;
    for (int j = 0; j < 3; ++j) {
      u[j] = blockmax::marginal_cdf_z(10, z[j]);
      margins *= blockmax::marginal_pdf_z(10, z[j]);
    }
    CHECK(rel_err(blockmax::joint_pdf_z(m, z), blockmax::max_copula_pdf(m, u) * margins) <=
          1e-8);
  }
  const std::vector<double> bad{0.0, NAN, 1.0};
  CHECK_THROWS_AS(blockmax::joint_pdf_z(m, bad), DomainError);
}

TEST_CASE("normal-scale margins") {
  for (std::int64_t n : {1, 10, 1000, 1000000}) {
    const double mass = oracle::gk_integrate(
        [&](double z) { return blockmax::marginal_pdf_z(n, z); }, -INFINITY, INFINITY, 1e-12);
    CAPTURE(n);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    for (double z : {-1.0, 0.5, 2.5, 4.0}) {
      const double fd =
          oracle::fd1([&](double x) { return blockmax::marginal_cdf_z(n, x); }, z, 1e-5);
      CHECK(std::abs(blockmax::marginal_pdf_z(n, z) - fd) <= 1e-6 * std::max(1.0, fd));
      CHECK(blockmax::marginal_cdf_z(n, z) ==
            doctest::Approx(std::pow(oracle::Phi(z), static_cast<double>(n))).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(blockmax::marginal_cdf_z(0, 0.0), DomainError);
}

TEST_CASE("density integrates to one") {
  for (int d : {3, 4}) {
    for (std::int64_t n : {2, 10}) {
      const double delta = 2.0;
      const auto m = clayton_model(d, delta, n);
      const oracle::ClaytonProvider base(d, delta);
      const SubsetMask all = (SubsetMask{1} << d) - 1;
      const double nd = static_cast<double>(n);
      const auto est = oracle::normalization(
          d, n, 20000, 31,
          [&](std::mt19937_64& g) { return oracle::clayton_draw(d, delta, g); },
          [&](const oracle::Point& x) { return base.partial(all, x); },
          [&](const oracle::Point& v) {
            std::vector<double> u(d);
            double jac = 1.0;
            for (int j = 0; j < d; ++j) {
              u[j] = std::pow(v[j], nd);
              jac *= nd * std::pow(v[j], nd - 1.0);
            }
            return blockmax::max_copula_pdf(m, u) * jac;
          });
      CAPTURE(d); CAPTURE(n); CAPTURE(est.std_error);
      CHECK(std::abs(est.mean - 1.0) <= 4.0 * est.std_error);
      CHECK(est.std_error < 0.01);
    }
  }
}

TEST_CASE("simulated block maxima follow the maxima copula") {
  const auto v = clayton_vine(2.0);
  const auto m = BlockMaxModel::from_vine(v, 10);
  std::vector<Point3> maxima(20000);
  kernels::omp::block_maxima(v, 10, 77, maxima);
  std::vector<Point3> grid;
  for (double a : {0.25, 0.5, 0.75})
    for (double b : {0.25, 0.5, 0.75})
      for (double c : {0.25, 0.5, 0.75}) grid.push_back({a, b, c});
  std::vector<double> ecdf(grid.size());
  kernels::omp::empirical_cdf(maxima, grid, ecdf);
  double sup = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const std::vector<double> u(grid[g].begin(), grid[g].end());
    sup = std::max(sup, std::abs(ecdf[g] - blockmax::max_copula_cdf(m, u)));
  }
  CHECK(sup <= 0.015);
}

TEST_CASE("extreme block sizes stay finite") {
  const auto m = BlockMaxModel::from_vine(mixed_vine(), 1000000000000);
  const std::vector<double> u{0.3, 0.5, 0.7};
  const double p = blockmax::max_copula_pdf(m, u);
  CHECK(std::isfinite(p));
  CHECK(p > 0.0);
  const std::vector<double> edge{0.0, 0.5, 0.7};
  CHECK(std::isfinite(blockmax::max_copula_pdf(m, edge)));
}
