#pragma once

// Test-only reference computations. Nothing here may call into the code
// path it is used to check: normal probabilities go through Boost's
// Gauss-Kronrod and erfc rather than the library's Genz routine and
// integrator.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace oracle {

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
inline double Phi_inv(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

inline double gk_integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

/// P(X<=h, Y<=k) by integrating phi(x) Phi((k - rho x)/sqrt(1-rho^2)) over x <= h.
inline double bvn_cdf(double h, double k, double rho) {
  const double s = std::sqrt(1.0 - rho * rho);
  return gk_integrate([&](double x) { return phi(x) * Phi((k - rho * x) / s); },
                      -std::numeric_limits<double>::infinity(), h);
}

/// Trivariate normal CDF, conditioning on X1 (the vine conditions on X2).
inline double tvn_cdf(double a, double b, double c, double r12, double r13, double r23) {
  const double s12 = std::sqrt(1.0 - r12 * r12);
  const double s13 = std::sqrt(1.0 - r13 * r13);
  const double r23_1 = (r23 - r12 * r13) / (s12 * s13);
  return gk_integrate(
      [&](double x) {
        return phi(x) * bvn_cdf((b - r12 * x) / s12, (c - r13 * x) / s13, r23_1);
      },
      -std::numeric_limits<double>::infinity(), a, 1e-12);
}

/// Implied rho13 of a Gaussian vine from (rho12, rho23, rho13;2).
inline double implied_rho13(double r12, double r23, double r13_2) {
  return r13_2 * std::sqrt(1.0 - r12 * r12) * std::sqrt(1.0 - r23 * r23) + r12 * r23;
}

/// Trivariate Gaussian copula density via the explicit 3x3 inverse.
inline double gaussian_copula_pdf3(const std::array<double, 3>& u, double r12, double r13,
                                   double r23) {
  const double x[3] = {Phi_inv(u[0]), Phi_inv(u[1]), Phi_inv(u[2])};
  const double det = 1 + 2 * r12 * r13 * r23 - r12 * r12 - r13 * r13 - r23 * r23;
  // adjugate of [[1,r12,r13],[r12,1,r23],[r13,r23,1]]
  const double inv[3][3] = {
      {(1 - r23 * r23) / det, (r13 * r23 - r12) / det, (r12 * r23 - r13) / det},
      {(r13 * r23 - r12) / det, (1 - r13 * r13) / det, (r12 * r13 - r23) / det},
      {(r12 * r23 - r13) / det, (r12 * r13 - r23) / det, (1 - r12 * r12) / det}};
  double q = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q += x[i] * ((i == j ? inv[i][j] - 1.0 : inv[i][j]) * x[j]);
  return std::exp(-0.5 * q) / std::sqrt(det);
}

/// Central first difference.
inline double fd1(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central mixed second difference.
inline double fd2(const std::function<double(double, double)>& f, double x, double y,
                  double h = 1e-4) {
  return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
}

/// Central mixed third difference.
inline double fd3(const std::function<double(double, double, double)>& f, double x, double y,
                  double z, double h = 1e-3) {
  double acc = 0.0;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) acc += a * b * c * f(x + a * h, y + b * h, z + c * h);
  return acc / (8.0 * h * h * h);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Fixed-seed uniform generator on [lo, hi].
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Kendall's tau by direct O(N^2) pair counting (tau-b).
template <typename Xs, typename Ys>
double kendall_tau_naive(const Xs& x, const Ys& y) {
  long long conc = 0, disc = 0, tx = 0, ty = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) { ++tx; continue; }
      if (dy == 0) { ++ty; continue; }
      (dx * dy > 0 ? conc : disc)++;
    }
  const double n1 = static_cast<double>(conc + disc + tx), n2 = static_cast<double>(conc + disc + ty);
  return (conc - disc) / std::sqrt(n1 * n2);
}

}  // namespace oracle
