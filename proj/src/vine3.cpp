#include "bmv/vine3.hpp"

#include <algorithm>
#include <string>

#include "bmv/error.hpp"
#include "bmv/kernels.hpp"

namespace bmv::vine3 {

namespace {

// Arguments of the conditional pair at conditioning value t:
// a = C_{1|2}(u1|t), b = C_{3|2}(u3|t).
struct Conditionals {
  double a, b;
};

Conditionals conditionals(const Vine3Spec& v, double u1, double t, double u3) {
  return {bicop::hfunc2(v.c12, u1, t), bicop::hfunc1(v.c23, t, u3)};
}

double integrate_v2(const std::function<double(double)>& f, double u2,
                    const QuadratureConfig& q) {
  if (u2 <= 0.0) return 0.0;
  return integrate(f, 0.0, std::min(u2, 1.0), q).value;
}

}  // namespace

double cdf(const Vine3Spec& v, double u1, double u2, double u3, const QuadratureConfig& q) {
  if (u1 <= 0.0 || u2 <= 0.0 || u3 <= 0.0) return 0.0;
  if (u1 >= 1.0) return bicop::cdf(v.c23, u2, u3);
  if (u3 >= 1.0) return bicop::cdf(v.c12, u1, u2);
  const double c = integrate_v2(
      [&](double t) {
        const auto [a, b] = conditionals(v, u1, t, u3);
        return bicop::cdf(v.c13_2, a, b);
      },
      u2, q);
  return std::clamp(c, 0.0, std::min({u1, u2, u3}));
}

double d1(const Vine3Spec& v, double u1, double u2, double u3, const QuadratureConfig& q) {
  return integrate_v2(
      [&](double t) {
        const auto [a, b] = conditionals(v, u1, t, u3);
        return bicop::hfunc1(v.c13_2, a, b) * bicop::pdf(v.c12, u1, t);
      },
      u2, q);
}

double d2(const Vine3Spec& v, double u1, double u2, double u3) {
  const auto [a, b] = conditionals(v, u1, u2, u3);
  return bicop::cdf(v.c13_2, a, b);
}

double d3(const Vine3Spec& v, double u1, double u2, double u3, const QuadratureConfig& q) {
  return integrate_v2(
      [&](double t) {
        const auto [a, b] = conditionals(v, u1, t, u3);
        return bicop::hfunc2(v.c13_2, a, b) * bicop::pdf(v.c23, t, u3);
      },
      u2, q);
}

double d12(const Vine3Spec& v, double u1, double u2, double u3) {
  const auto [a, b] = conditionals(v, u1, u2, u3);
  return bicop::hfunc1(v.c13_2, a, b) * bicop::pdf(v.c12, u1, u2);
}

double d13(const Vine3Spec& v, double u1, double u2, double u3, const QuadratureConfig& q) {
  return integrate_v2(
      [&](double t) {
        const auto [a, b] = conditionals(v, u1, t, u3);
        return bicop::pdf(v.c13_2, a, b) * bicop::pdf(v.c23, t, u3) * bicop::pdf(v.c12, u1, t);
      },
      u2, q);
}

double d23(const Vine3Spec& v, double u1, double u2, double u3) {
  const auto [a, b] = conditionals(v, u1, u2, u3);
  return bicop::hfunc2(v.c13_2, a, b) * bicop::pdf(v.c23, u2, u3);
}

double pdf(const Vine3Spec& v, double u1, double u2, double u3) {
  const auto [a, b] = conditionals(v, u1, u2, u3);
  return bicop::pdf(v.c12, u1, u2) * bicop::pdf(v.c23, u2, u3) * bicop::pdf(v.c13_2, a, b);
}

double partial(const Vine3Spec& v, SubsetMask m, const Point3& u, const QuadratureConfig& q) {
  const auto [u1, u2, u3] = u;
  switch (m) {
    case 0b001: return d1(v, u1, u2, u3, q);
    case 0b010: return d2(v, u1, u2, u3);
    case 0b100: return d3(v, u1, u2, u3, q);
    case 0b011: return d12(v, u1, u2, u3);
    case 0b101: return d13(v, u1, u2, u3, q);
    case 0b110: return d23(v, u1, u2, u3);
    case 0b111: return pdf(v, u1, u2, u3);
    default: break;
  }
  throw DomainError("vine3 partial: subset mask " + std::to_string(m) +
                    " is not a nonempty subset of {1,2,3}");
}

std::array<double, 8> all_partials(const Vine3Spec& v, const Point3& u,
                                   const QuadratureConfig& q) {
  const auto [u1, u2, u3] = u;
  std::array<double, 8> out{};
  out[0b010] = d2(v, u1, u2, u3);
  out[0b011] = d12(v, u1, u2, u3);
  out[0b110] = d23(v, u1, u2, u3);
  out[0b111] = pdf(v, u1, u2, u3);
  if (u1 <= 0.0 || u2 <= 0.0 || u3 <= 0.0) return out;
  // components: cdf, d1, d3, d13
  const auto r = integrate_vector(
      [&](double t, std::span<double> f) {
        const auto e12 = bicop::evaluate(v.c12, u1, t, false);
        const auto e23 = bicop::evaluate(v.c23, t, u3, false);
        const auto e13 = bicop::evaluate(v.c13_2, e12.h2, e23.h1);
        f[0] = e13.cdf;
        f[1] = e13.h1 * e12.pdf;
        f[2] = e13.h2 * e23.pdf;
        f[3] = e13.pdf * e12.pdf * e23.pdf;
      },
      4, 0.0, std::min(u2, 1.0), q);
  out[0] = std::clamp(r[0].value, 0.0, std::min({u1, u2, u3}));
  out[0b001] = r[1].value;
  out[0b100] = r[2].value;
  out[0b101] = r[3].value;
  return out;
}

Point3 transform_uniforms(const Vine3Spec& v, const Point3& w) {
  const double u2 = w[1];
  const double u1 = bicop::hinv2(v.c12, w[0], u2);
  // C_{3|12} = dC13_2(a,b)/da with a = C_{1|2}(u1|u2) = w[0]
  const double b = bicop::hinv1(v.c13_2, w[2], w[0]);
  const double u3 = bicop::hinv1(v.c23, b, u2);
  return {u1, u2, u3};
}

std::vector<Point3> sample(const Vine3Spec& v, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("vine3 sample: count must be >= 1");
  std::vector<Point3> out(count);
  kernels::omp::sample_vine(v, seed, out);
  return out;
}

}  // namespace bmv::vine3
