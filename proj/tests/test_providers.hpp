#pragma once

#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bmv/blockmax.hpp"
#include "bmv/vine3.hpp"
#include "oracles.hpp"

namespace oracle {

// d-dimensional Clayton copula C = S^{-1/delta}, S = sum u^-delta - d + 1,
// with closed-form mixed partials
// d_M C = prod_{k<|M|} (1 + k delta) prod_{m in M} u_m^{-delta-1} S^{-1/delta-|M|}.
class ClaytonProvider final : public bmv::PartialProvider {
 public:
  ClaytonProvider(int d, double delta) : d_(d), delta_(delta) {}
  int dimension() const noexcept override { return d_; }
  double cdf(std::span<const double> u) const override {
    return std::pow(sum(u), -1.0 / delta_);
  }
  double partial(bmv::SubsetMask m, std::span<const double> u) const override {
    const int p = std::popcount(m);
    double out = std::pow(sum(u), -1.0 / delta_ - p);
    for (int k = 1; k < p; ++k) out *= 1.0 + k * delta_;
    for (int j = 0; j < d_; ++j)
      if (m & (1u << j)) out *= std::pow(u[j], -delta_ - 1.0);
    return out;
  }

 private:
  double sum(std::span<const double> u) const {
    double s = 1.0 - d_;
    for (double x : u) s += std::pow(x, -delta_);
    return s;
  }
  int d_;
  double delta_;
};

// Central-difference mixed partial over every coordinate of a d-variate
// function: 2^d evaluations, O(h^2).
inline double fd_all_step(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x, double h) {
  const std::size_t d = x.size();
  const std::vector<double> centre = x;
  double acc = 0.0;
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    int sign = 1;
    for (std::size_t j = 0; j < d; ++j) {
      const bool up = corner & (1u << j);
      x[j] = centre[j] + (up ? h : -h);
      if (!up) sign = -sign;
    }
    acc += sign * f(x);
  }
  return acc / std::pow(2.0 * h, static_cast<double>(d));
}

// Richardson-extrapolated version, O(h^4); a larger base step keeps the
// 2^d-term cancellation away from roundoff.
inline double fd_all(const std::function<double(std::span<const double>)>& f,
                     const std::vector<double>& x, double h = 4e-3) {
  return (4.0 * fd_all_step(f, x, 0.5 * h) - fd_all_step(f, x, h)) / 3.0;
}

// Marshall-Olkin draw of the d-dimensional Clayton copula.
inline std::vector<double> clayton_draw(int d, double delta, std::mt19937_64& gen) {
  std::gamma_distribution<double> frailty(1.0 / delta, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double v = frailty(gen);
  std::vector<double> u(d);
  for (auto& x : u) x = std::pow(1.0 + expo(gen) / v, -1.0 / delta);
  return u;
}

// Mixed vine with moderate dependence in each pair.
inline bmv::Vine3Spec random_vine(Uniform& rng) {
  using bmv::BicopFamily;
  auto pair = [&] {
    const double tau = rng(0.05, 0.6);
    switch (static_cast<int>(rng(0, 4))) {
      case 0: return bmv::bicop::tau_to_param(BicopFamily::Gaussian, rng() < 0.5 ? tau : -tau);
      case 1: return bmv::bicop::tau_to_param(BicopFamily::Clayton, tau);
      case 2: return bmv::bicop::tau_to_param(BicopFamily::Frank, rng() < 0.5 ? tau : -tau);
      default: return bmv::bicop::tau_to_param(BicopFamily::Gumbel, tau);
    }
  };
  return {pair(), pair(), pair()};
}

// Three-dimensional density of the maxima written out term by term.
inline double expanded_density3(const bmv::Vine3Spec& v, std::int64_t n, const bmv::Point3& u,
                                const bmv::QuadratureConfig& q) {
  namespace vine3 = bmv::vine3;
  const double nd = static_cast<double>(n);
  const double a = std::pow(u[0], 1.0 / nd), b = std::pow(u[1], 1.0 / nd),
               c = std::pow(u[2], 1.0 / nd);
  const double C = vine3::cdf(v, a, b, c, q);
  const double d1 = vine3::d1(v, a, b, c, q), d2 = vine3::d2(v, a, b, c),
               d3 = vine3::d3(v, a, b, c, q);
  const double d12 = vine3::d12(v, a, b, c), d13 = vine3::d13(v, a, b, c, q),
               d23 = vine3::d23(v, a, b, c);
  const double d123 = vine3::pdf(v, a, b, c);
  double s = nd * std::pow(C, nd - 1) * d123;
  if (n >= 2) s += nd * (nd - 1) * std::pow(C, nd - 2) * (d12 * d3 + d13 * d2 + d23 * d1);
  if (n >= 3) s += nd * (nd - 1) * (nd - 2) * std::pow(C, nd - 3) * d1 * d2 * d3;
  return s / (nd * nd * nd) * std::pow(u[0] * u[1] * u[2], 1.0 / nd - 1.0);
}

}  // namespace oracle
