#pragma once

#include <string>
#include <string_view>

namespace bmv {

enum class BicopFamily { Independence, Gaussian, Clayton, Frank, Gumbel };

std::string_view to_string(BicopFamily family) noexcept;
/// Case-insensitive; throws DomainError on unknown names.
BicopFamily family_from_string(std::string_view name);

/// One bivariate pair copula. The parameter is validated on construction:
/// Gaussian rho in (-1,1), Clayton delta > 0, Frank theta != 0,
/// Gumbel theta >= 1. Independence carries no parameter.
class BicopSpec {
 public:
  BicopSpec() = default;  // independence
  BicopSpec(BicopFamily family, double parameter);

  static BicopSpec independence() { return {}; }

  BicopFamily family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }

  friend bool operator==(const BicopSpec&, const BicopSpec&) = default;

 private:
  BicopFamily family_ = BicopFamily::Independence;
  double parameter_ = 0.0;
};

std::string describe(const BicopSpec& spec);

namespace bicop {

/// Inputs are clamped to [kClamp, 1-kClamp] before any transcendental
/// evaluation. Exact 0/1 arguments of cdf and the h-functions return the
/// boundary identities instead.
inline constexpr double kClamp = 1e-10;

/// Largest |theta| searched when inverting Frank's tau.
inline constexpr double kFrankThetaMax = 50.0;

double cdf(const BicopSpec& spec, double u, double v);
double pdf(const BicopSpec& spec, double u, double v);

/// C_{1|2}(u|v) = dC(u,v)/dv.
double hfunc2(const BicopSpec& spec, double u, double v);
/// C_{2|1}(v|u) = dC(u,v)/du.
double hfunc1(const BicopSpec& spec, double u, double v);

/// Solves hfunc2(spec, u, v) = p for u.
double hinv2(const BicopSpec& spec, double p, double v);
/// Solves hfunc1(spec, u, v) = p for v.
double hinv1(const BicopSpec& spec, double p, double u);

struct PairValues {
  double cdf, h1, h2, pdf;
};

/// cdf, hfunc1, hfunc2 and pdf at one point, sharing the per-point
/// transforms. Each field equals the corresponding single call. With
/// need_cdf = false the cdf field is NaN.
PairValues evaluate(const BicopSpec& spec, double u, double v, bool need_cdf = true);

/// Kendall's tau of the family at the spec's parameter.
double param_to_tau(const BicopSpec& spec);
/// Inverse of param_to_tau. Independence ignores tau. Throws DomainError
/// (naming the family) when tau is not attainable.
BicopSpec tau_to_param(BicopFamily family, double tau);

}  // namespace bicop
}  // namespace bmv
