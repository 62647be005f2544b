#include "bmv/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "bmv/error.hpp"

namespace bmv::normal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Half sets of the 6-, 12- and 20-point Gauss-Legendre rules on [-1,1].
constexpr std::array<double, 3> kX6 = {-0.932469514203152, -0.6612093864662645,
                                       -0.23861918608319693};
constexpr std::array<double, 3> kW6 = {0.17132449237916975, 0.36076157304813894,
                                       0.46791393457269137};
constexpr std::array<double, 6> kX12 = {
    -0.9815606342467192, -0.9041172563704748, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689};
constexpr std::array<double, 6> kW12 = {
    0.04717533638651202, 0.10693932599531888, 0.1600783285433461,
    0.20316742672306565, 0.23349253653835464, 0.2491470458134027};
constexpr std::array<double, 10> kX20 = {
    -0.9931285991850949, -0.9639719272779138, -0.9122344282513258,
    -0.8391169718222188, -0.7463319064601508, -0.636053680726515,
    -0.5108670019508271, -0.37370608871541955, -0.2277858511416451,
    -0.07652652113349734};
constexpr std::array<double, 10> kW20 = {
    0.017614007139153273, 0.04060142980038622, 0.06267204833410944,
    0.08327674157670467,  0.10193011981724026, 0.11819453196151825,
    0.13168863844917653,  0.14209610931838187, 0.14917298647260366,
    0.15275338713072578};

template <std::size_t N>
struct Rule {
  const std::array<double, N>& x;
  const std::array<double, N>& w;
};

// Upper probability P(X > h, Y > k).
template <std::size_t N>
double upper(double h, double k, double r, Rule<N> rule) {
  double hk = h * k;
  double bvn = 0.0;
  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r);
    for (std::size_t i = 0; i < N; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (sgn * rule.x[i] + 1.0) / 2.0);
        bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return bvn * asr / (2.0 * kTwoPi) + cdf(-h) * cdf(-k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(r) < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (std::size_t i = 0; i < N; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double xs = std::pow(a * (sgn * rule.x[i] + 1.0), 2);
        const double rs = std::sqrt(1.0 - xs);
        bvn += a * rule.w[i] *
               (std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs -
                std::exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs)));
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) return bvn + cdf(-std::max(h, k));
  bvn = -bvn;
  if (k > h) {
    if (h < 0.0) {
      bvn += cdf(k) - cdf(h);
    } else {
      bvn += cdf(-h) - cdf(-k);
    }
  }
  return bvn;
}

}  // namespace

double pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

double cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {
const boost::math::policies::policy<boost::math::policies::promote_double<false>> kNoPromotion;
}

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile: p must lie in (0,1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p, kNoPromotion);
}

double bivariate_cdf(double h, double k, double rho) noexcept {
  if (std::isinf(h) || std::isinf(k)) {
    if (h == -HUGE_VAL || k == -HUGE_VAL) return 0.0;
    if (h == HUGE_VAL) return cdf(k);
    return cdf(h);
  }
  double p;
  const double ar = std::abs(rho);
  if (ar < 0.3) {
    p = upper<3>(-h, -k, rho, {kX6, kW6});
  } else if (ar < 0.75) {
    p = upper<6>(-h, -k, rho, {kX12, kW12});
  } else {
    p = upper<10>(-h, -k, rho, {kX20, kW20});
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace bmv::normal
