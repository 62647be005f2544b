#include "bmv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "bmv/error.hpp"

namespace bmv {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double value, error;
};

// QUADPACK qk15 with its error scaling heuristics, applied to a single
// component given its 15 samples ordered (center, -x0, +x0, -x1, +x1, ...).
Estimate qk15_rule(const std::array<double, 15>& fx, double half) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double fc = fx[0];
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double f1 = fx[1 + 2 * j];
    const double f2 = fx[2 + 2 * j];
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fx[1 + 2 * j] - reskh) + std::abs(fx[2 + 2 * j] - reskh));
  }
  const double ahalf = std::abs(half);
  const double result = resk * half;
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {result, err};
}

template <typename Sample>
void gk15_nodes(double a, double b, Sample&& sample) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  sample(0, center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    sample(1 + 2 * j, center - dx);
    sample(2 + 2 * j, center + dx);
  }
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  std::array<double, 15> fx{};
  gk15_nodes(a, b, [&](int k, double x) { fx[k] = f(x); });
  const auto e = qk15_rule(fx, 0.5 * (b - a));
  return {a, b, e.value, e.error};
}

struct VecSegment {
  double a, b;
  std::vector<Estimate> parts;
  double priority;  // largest component error relative to its tolerance share
  bool operator<(const VecSegment& o) const { return priority < o.priority; }
};

VecSegment gk15_vector(const std::function<void(double, std::span<double>)>& f,
                       std::size_t dim, double a, double b) {
  std::vector<std::array<double, 15>> fx(dim);
  std::vector<double> buf(dim);
  gk15_nodes(a, b, [&](int k, double x) {
    f(x, buf);
    for (std::size_t i = 0; i < dim; ++i) fx[i][k] = buf[i];
  });
  VecSegment seg{a, b, {}, 0.0};
  seg.parts.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) seg.parts.push_back(qk15_rule(fx[i], 0.5 * (b - a)));
  return seg;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg) {
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int subdivisions = 1;

  auto converged = [&] {
    if (!std::isfinite(total) || !std::isfinite(total_err))
      throw NumericalError("integrand is not finite on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]",
                           total_err);
    return total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  };
  while (!converged()) {
    if (subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge after "
          << subdivisions << " subintervals (error estimate " << total_err << ")";
      throw NumericalError(msg.str(), total_err);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("adaptive quadrature exhausted machine resolution near " +
                               std::to_string(worst.a),
                           total_err);
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum to shed accumulated cancellation from the running updates.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, subdivisions};
}

}  // namespace bmv

namespace bmv {

std::vector<QuadratureResult> integrate_vector(
    const std::function<void(double, std::span<double>)>& f, std::size_t dim, double a,
    double b, const QuadratureConfig& cfg) {
  std::vector<QuadratureResult> out(dim);
  if (a == b || dim == 0) return out;
  std::vector<double> total(dim), total_err(dim);

  // Priorities compare errors against per-component tolerances, which move
  // as the totals settle; they are refreshed lazily on pop.
  auto tolerance = [&](std::size_t i) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total[i]));
  };
  auto priority = [&](const VecSegment& s) {
    double p = 0.0;
    for (std::size_t i = 0; i < dim; ++i) p = std::max(p, s.parts[i].error / tolerance(i));
    return p;
  };

  std::priority_queue<VecSegment> heap;
  VecSegment first = gk15_vector(f, dim, a, b);
  for (std::size_t i = 0; i < dim; ++i) {
    total[i] = first.parts[i].value;
    total_err[i] = first.parts[i].error;
  }
  first.priority = priority(first);
  heap.push(std::move(first));
  int subdivisions = 1;

  auto converged = [&] {
    for (std::size_t i = 0; i < dim; ++i)
      if (!std::isfinite(total[i]) || !std::isfinite(total_err[i]))
        throw NumericalError("integrand component " + std::to_string(i) +
                                 " is not finite on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "]",
                             total_err[i]);
    for (std::size_t i = 0; i < dim; ++i)
      if (!(total_err[i] <= tolerance(i))) return false;
    return true;
  };
  while (!converged()) {
    if (subdivisions >= cfg.max_subdivisions) {
      double worst = 0.0;
      for (double e : total_err) worst = std::max(worst, e);
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge after "
          << subdivisions << " subintervals (error estimate " << worst << ")";
      throw NumericalError(msg.str(), worst);
    }
    VecSegment worst = heap.top();
    heap.pop();
    const double refreshed = priority(worst);
    if (!heap.empty() && refreshed < heap.top().priority) {
      worst.priority = refreshed;
      heap.push(std::move(worst));
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("adaptive quadrature exhausted machine resolution near " +
                               std::to_string(worst.a),
                           *std::max_element(total_err.begin(), total_err.end()));
    }
    VecSegment left = gk15_vector(f, dim, worst.a, mid);
    VecSegment right = gk15_vector(f, dim, mid, worst.b);
    for (std::size_t i = 0; i < dim; ++i) {
      total[i] += left.parts[i].value + right.parts[i].value - worst.parts[i].value;
      total_err[i] += left.parts[i].error + right.parts[i].error - worst.parts[i].error;
    }
    left.priority = priority(left);
    right.priority = priority(right);
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++subdivisions;
  }

  while (!heap.empty()) {
    const auto& s = heap.top();
    for (std::size_t i = 0; i < dim; ++i) {
      out[i].value += s.parts[i].value;
      out[i].error += s.parts[i].error;
    }
    heap.pop();
  }
  for (auto& r : out) r.subdivisions = subdivisions;
  return out;
}

}  // namespace bmv
