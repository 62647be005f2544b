#include "bmv/bicop.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bmv/error.hpp"
#include "bmv/normal.hpp"
#include "bmv/quadrature.hpp"

namespace bmv {

namespace {

double clamp_unit(double x) { return std::clamp(x, bicop::kClamp, 1.0 - bicop::kClamp); }

// log(e^a + e^b)
double log_add_exp(double a, double b) {
  const double m = std::max(a, b);
  if (m == -HUGE_VAL) return m;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// ---------------------------------------------------------------- Gaussian

struct Gaussian {
  double rho;

  double cdf(double u, double v) const {
    return normal::bivariate_cdf(normal::quantile(u), normal::quantile(v), rho);
  }
  double pdf(double u, double v) const {
    const double x = normal::quantile(u);
    const double y = normal::quantile(v);
    const double s = 1.0 - rho * rho;
    return std::exp(-(rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * s)) /
           std::sqrt(s);
  }
  double h2(double u, double v) const {
    const double x = normal::quantile(u);
    const double y = normal::quantile(v);
    return normal::cdf((x - rho * y) / std::sqrt(1.0 - rho * rho));
  }
  double hinv2(double p, double v) const {
    const double y = normal::quantile(v);
    return normal::cdf(normal::quantile(p) * std::sqrt(1.0 - rho * rho) + rho * y);
  }
};

// ----------------------------------------------------------------- Clayton
// All terms are carried as logs; a = -delta*log(u) may be huge for strong
// dependence.

struct Clayton {
  double delta;

  // log(u^-delta + v^-delta - 1) given la = -delta log u, lb = -delta log v.
  static double log_s(double la, double lb) {
    const double m = std::max(la, lb);
    const double n = std::min(la, lb);
    if (m < 1.0) return std::log1p(std::expm1(la) + std::expm1(lb));
    const double tail = n > 1.0 ? std::exp(n - m) - std::exp(-m) : std::exp(-m) * std::expm1(n);
    return m + std::log1p(tail);
  }

  double cdf(double u, double v) const {
    return std::exp(-log_s(-delta * std::log(u), -delta * std::log(v)) / delta);
  }
  double pdf(double u, double v) const {
    const double la = -delta * std::log(u);
    const double lb = -delta * std::log(v);
    return std::exp(std::log1p(delta) + (1.0 + 1.0 / delta) * (la + lb) -
                    (1.0 / delta + 2.0) * log_s(la, lb));
  }
  double h2(double u, double v) const {
    const double la = -delta * std::log(u);
    const double lb = -delta * std::log(v);
    return std::exp((1.0 + 1.0 / delta) * (lb - log_s(la, lb)));
  }
  double hinv2(double p, double v) const {
    const double lb = -delta * std::log(v);
    const double q = -(delta / (1.0 + delta)) * std::log(p);
    // log(expm1(q)) without overflow
    const double log_em1 = q > 30.0 ? q + std::log1p(-std::exp(-q)) : std::log(std::expm1(q));
    const double t = lb + log_em1;
    const double log_x = t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
    return std::exp(-log_x / delta);
  }
};

// ------------------------------------------------------------------- Frank
// Evaluated for theta > 0; negative parameters use the reflection
// C_{-theta}(u,v) = u - C_theta(u, 1-v).

struct FrankPositive {
  double theta;

  // log(-D) with D = e^-theta - e^-theta u - e^-theta v + e^-theta(u+v)
  double log_neg_d(double u, double v) const {
    if (theta < 1.0) {
      return std::log(-(std::expm1(-theta) + std::expm1(-theta * u) * std::expm1(-theta * v)));
    }
    const double la = -theta * u, lb = -theta * v, lg = -theta;
    const double m = std::max(la, lb), n = std::min(la, lb);
    return m + std::log1p(std::exp(n - m) * (-std::expm1(m)) - std::exp(lg - m));
  }

  double cdf(double u, double v) const {
    if (theta < 1.0) {
      return -std::log1p(std::expm1(-theta * u) * std::expm1(-theta * v) / std::expm1(-theta)) /
             theta;
    }
    return -(log_neg_d(u, v) - std::log1p(-std::exp(-theta))) / theta;
  }
  double pdf(double u, double v) const {
    return std::exp(std::log(theta) + std::log(-std::expm1(-theta)) - theta * (u + v) -
                    2.0 * log_neg_d(u, v));
  }
  double h2(double u, double v) const {
    return std::exp(-theta * v + std::log(-std::expm1(-theta * u)) - log_neg_d(u, v));
  }
  double hinv2(double p, double v) const {
    if (theta < 1.0) {
      const double a = p * std::expm1(-theta) / (1.0 + std::expm1(-theta * v) * (1.0 - p));
      return -std::log1p(a) / theta;
    }
    const double lb_q = -theta * v + std::log1p(-p);
    const double lp = std::log(p);
    return -(log_add_exp(lb_q, lp - theta) - log_add_exp(lp, lb_q)) / theta;
  }
};

struct Frank {
  double theta;

  double cdf(double u, double v) const {
    if (theta > 0.0) return FrankPositive{theta}.cdf(u, v);
    return u - FrankPositive{-theta}.cdf(u, 1.0 - v);
  }
  double pdf(double u, double v) const {
    if (theta > 0.0) return FrankPositive{theta}.pdf(u, v);
    return FrankPositive{-theta}.pdf(u, 1.0 - v);
  }
  double h2(double u, double v) const {
    if (theta > 0.0) return FrankPositive{theta}.h2(u, v);
    return FrankPositive{-theta}.h2(u, 1.0 - v);
  }
  double hinv2(double p, double v) const {
    if (theta > 0.0) return FrankPositive{theta}.hinv2(p, v);
    return FrankPositive{-theta}.hinv2(p, 1.0 - v);
  }
};

// ------------------------------------------------------------------ Gumbel

struct Gumbel {
  double theta;

  // log A with A = (x^theta + y^theta)^(1/theta)
  double log_a(double lx, double ly) const {
    return log_add_exp(theta * lx, theta * ly) / theta;
  }
  double cdf(double u, double v) const {
    const double la = log_a(std::log(-std::log(u)), std::log(-std::log(v)));
    return std::exp(-std::exp(la));
  }
  double pdf(double u, double v) const {
    const double x = -std::log(u), y = -std::log(v);
    const double lx = std::log(x), ly = std::log(y);
    const double la = log_a(lx, ly);
    const double a = std::exp(la);
    return std::exp(-a + x + y + (theta - 1.0) * (lx + ly) + (1.0 - 2.0 * theta) * la +
                    std::log(a + theta - 1.0));
  }
  double h2(double u, double v) const {
    const double y = -std::log(v);
    const double ly = std::log(y);
    const double la = log_a(std::log(-std::log(u)), ly);
    return std::exp(-std::exp(la) + (theta - 1.0) * (ly - la) + y);
  }
  // Safeguarded Newton on u; dh2/du is the density.
  double hinv2(double p, double v) const {
    double lo = 0.0, hi = 1.0;
    double u = p;
    for (int it = 0; it < 200; ++it) {
      const double uc = clamp_unit(u);
      const double f = h2(uc, v) - p;
      if (std::abs(f) <= 1e-14) return u;
      if (f > 0.0) hi = u; else lo = u;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) return 0.5 * (lo + hi);
      const double slope = pdf(uc, v);
      double next = u - f / slope;
      if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
      u = next;
    }
    std::ostringstream msg;
    msg << "Gumbel(" << theta << ") h-inverse did not converge for p=" << p << ", v=" << v
        << " (bracket [" << lo << ", " << hi << "])";
    throw NumericalError(msg.str(), hi - lo);
  }
};

template <typename Fn>
auto dispatch(const BicopSpec& spec, Fn&& fn) {
  switch (spec.family()) {
    case BicopFamily::Gaussian:
      return fn(Gaussian{spec.parameter()});
    case BicopFamily::Clayton:
      return fn(Clayton{spec.parameter()});
    case BicopFamily::Frank:
      return fn(Frank{spec.parameter()});
    case BicopFamily::Gumbel:
      return fn(Gumbel{spec.parameter()});
    case BicopFamily::Independence:
      break;
  }
  throw DomainError("independence has no parametric kernel");
}

double frank_tau_positive(double theta) {
  if (theta < 1e-4) return theta / 9.0 - theta * theta * theta / 900.0;
  QuadratureConfig cfg{1e-14, 1e-13, 200};
  const double debye =
      integrate([](double t) { return t / std::expm1(t); }, 0.0, theta, cfg).value / theta;
  return 1.0 - 4.0 / theta * (1.0 - debye);
}

}  // namespace

std::string_view to_string(BicopFamily family) noexcept {
  switch (family) {
    case BicopFamily::Independence: return "independence";
    case BicopFamily::Gaussian: return "gaussian";
    case BicopFamily::Clayton: return "clayton";
    case BicopFamily::Frank: return "frank";
    case BicopFamily::Gumbel: return "gumbel";
  }
  return "unknown";
}

BicopFamily family_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto f : {BicopFamily::Independence, BicopFamily::Gaussian, BicopFamily::Clayton,
                 BicopFamily::Frank, BicopFamily::Gumbel}) {
    if (lower == to_string(f)) return f;
  }
  if (lower == "indep" || lower == "pi") return BicopFamily::Independence;
  if (lower == "normal" || lower == "gauss") return BicopFamily::Gaussian;
  throw DomainError("unknown pair-copula family '" + std::string(name) + "'");
}

BicopSpec::BicopSpec(BicopFamily family, double parameter)
    : family_(family), parameter_(parameter) {
  auto fail = [&](const char* domain) {
    std::ostringstream msg;
    msg << to_string(family) << " parameter " << parameter << " outside " << domain;
    throw DomainError(msg.str());
  };
  if (family != BicopFamily::Independence && !std::isfinite(parameter)) fail("finite reals");
  switch (family) {
    case BicopFamily::Independence:
      parameter_ = 0.0;
      break;
    case BicopFamily::Gaussian:
      if (!(parameter > -1.0 && parameter < 1.0)) fail("(-1, 1)");
      break;
    case BicopFamily::Clayton:
      if (!(parameter > 0.0)) fail("(0, inf)");
      break;
    case BicopFamily::Frank:
      if (parameter == 0.0) fail("R \\ {0}");
      break;
    case BicopFamily::Gumbel:
      if (!(parameter >= 1.0)) fail("[1, inf)");
      break;
  }
}

std::string describe(const BicopSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.family());
  if (spec.family() != BicopFamily::Independence) out << "(" << spec.parameter() << ")";
  return out.str();
}

namespace bicop {

double cdf(const BicopSpec& spec, double u, double v) {
  u = std::clamp(u, 0.0, 1.0);
  v = std::clamp(v, 0.0, 1.0);
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  if (spec.family() == BicopFamily::Independence) return u * v;
  const double uc = clamp_unit(u), vc = clamp_unit(v);
  const double c = dispatch(spec, [&](const auto& k) { return k.cdf(uc, vc); });
  return std::clamp(c, std::max(0.0, u + v - 1.0), std::min(u, v));
}

double pdf(const BicopSpec& spec, double u, double v) {
  if (spec.family() == BicopFamily::Independence) return 1.0;
  const double uc = clamp_unit(u), vc = clamp_unit(v);
  const double c = dispatch(spec, [&](const auto& k) { return k.pdf(uc, vc); });
  if (!std::isfinite(c)) {
    std::ostringstream msg;
    msg << describe(spec) << " density non-finite at (" << u << ", " << v << ")";
    throw NumericalError(msg.str());
  }
  return c;
}

double hfunc2(const BicopSpec& spec, double u, double v) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  if (spec.family() == BicopFamily::Independence) return u;
  const double uc = clamp_unit(u), vc = clamp_unit(v);
  return std::clamp(dispatch(spec, [&](const auto& k) { return k.h2(uc, vc); }), 0.0, 1.0);
}

double hfunc1(const BicopSpec& spec, double u, double v) {
  // every supported family is exchangeable
  return hfunc2(spec, v, u);
}

double hinv2(const BicopSpec& spec, double p, double v) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (spec.family() == BicopFamily::Independence) return p;
  const double vc = clamp_unit(v);
  return std::clamp(dispatch(spec, [&](const auto& k) { return k.hinv2(p, vc); }), 0.0, 1.0);
}

double hinv1(const BicopSpec& spec, double p, double u) { return hinv2(spec, p, u); }

PairValues evaluate(const BicopSpec& spec, double u, double v, bool need_cdf) {
  const bool interior = u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0;
  if (spec.family() != BicopFamily::Gaussian || !interior) {
    return {need_cdf ? cdf(spec, u, v) : NAN, hfunc1(spec, u, v), hfunc2(spec, u, v),
            pdf(spec, u, v)};
  }
  const double rho = spec.parameter();
  const double x = normal::quantile(clamp_unit(u));
  const double y = normal::quantile(clamp_unit(v));
  const double s2 = 1.0 - rho * rho;
  const double s = std::sqrt(s2);
  PairValues out;
  out.cdf = need_cdf ? std::clamp(normal::bivariate_cdf(x, y, rho), std::max(0.0, u + v - 1.0),
                                  std::min(u, v))
                     : NAN;
  out.h2 = std::clamp(normal::cdf((x - rho * y) / s), 0.0, 1.0);
  out.h1 = std::clamp(normal::cdf((y - rho * x) / s), 0.0, 1.0);
  out.pdf = std::exp(-(rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * s2)) / s;
  return out;
}

double param_to_tau(const BicopSpec& spec) {
  const double t = spec.parameter();
  switch (spec.family()) {
    case BicopFamily::Independence: return 0.0;
    case BicopFamily::Gaussian: return 2.0 / std::numbers::pi * std::asin(t);
    case BicopFamily::Clayton: return t / (t + 2.0);
    case BicopFamily::Gumbel: return 1.0 - 1.0 / t;
    case BicopFamily::Frank: return t > 0.0 ? frank_tau_positive(t) : -frank_tau_positive(-t);
  }
  return 0.0;
}

BicopSpec tau_to_param(BicopFamily family, double tau) {
  auto unattainable = [&](const char* range) {
    std::ostringstream msg;
    msg << "Kendall's tau " << tau << " not attainable by " << to_string(family)
        << " (attainable range " << range << ")";
    throw DomainError(msg.str());
  };
  if (!std::isfinite(tau)) unattainable("finite values");
  switch (family) {
    case BicopFamily::Independence:
      return BicopSpec::independence();
    case BicopFamily::Gaussian:
      if (!(tau > -1.0 && tau < 1.0)) unattainable("(-1, 1)");
      return {family, std::sin(std::numbers::pi * tau / 2.0)};
    case BicopFamily::Clayton:
      if (!(tau > 0.0 && tau < 1.0)) unattainable("(0, 1)");
      return {family, 2.0 * tau / (1.0 - tau)};
    case BicopFamily::Gumbel:
      if (!(tau >= 0.0 && tau < 1.0)) unattainable("[0, 1)");
      return {family, 1.0 / (1.0 - tau)};
    case BicopFamily::Frank: {
      static const double tau_max = frank_tau_positive(kFrankThetaMax);
      const double target = std::abs(tau);
      if (tau == 0.0 || target >= tau_max) unattainable("(-0.92, 0.92) \\ {0}");
      double lo = 0.0, hi = kFrankThetaMax;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (frank_tau_positive(mid) < target) lo = mid; else hi = mid;
      }
      const double theta = 0.5 * (lo + hi);
      return {family, tau > 0.0 ? theta : -theta};
    }
  }
  unattainable("none");
  return {};
}

}  // namespace bicop
}  // namespace bmv
