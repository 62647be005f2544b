#pragma once

namespace bmv::normal {

double pdf(double x) noexcept;
double cdf(double x) noexcept;
/// Standard normal quantile; p must lie in (0,1).
double quantile(double p);

/// Lower bivariate normal probability P(X <= h, Y <= k) with correlation rho.
/// Drezner-Wesolowsky / Genz Gauss-Legendre scheme, absolute accuracy ~1e-15.
double bivariate_cdf(double h, double k, double rho) noexcept;

}  // namespace bmv::normal
