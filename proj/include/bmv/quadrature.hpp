#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bmv {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 200;

  /// Throws DomainError unless tolerances > 0 and max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a,b].
/// Bisects the interval with the largest error estimate until the total
/// estimate drops below max(abs_tol, rel_tol*|I|). Throws NumericalError
/// carrying the achieved estimate when max_subdivisions is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg = {});

/// Integrates `dim` functions over [a,b] on one shared adaptive mesh.
/// f(x, out) writes the dim integrand values at x into out. Every component
/// must meet the tolerance; the interval with the largest error estimate
/// (over components) is bisected first.
std::vector<QuadratureResult> integrate_vector(
    const std::function<void(double, std::span<double>)>& f, std::size_t dim, double a,
    double b, const QuadratureConfig& cfg = {});

}  // namespace bmv
