#pragma once

#include <functional>
#include <vector>

#include "bec/specfun.hpp"

namespace bec::quad {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
};

/// Adaptive 10/21-point Gauss-Kronrod over [a, b]. Open rule: never samples the
/// endpoints, so integrable endpoint singularities are tolerated.
QuadratureResult integrate(const Integrand& f, double a, double b, const AccuracyBudget& acc = {});

/// Integral over [breakpoints.front(), inf). The finite panels between
/// consecutive breakpoints and the tail beyond the last one are refined under a
/// single global error budget. The tail is mapped to u in (0, 1] by
/// p = p_last - tail_scale * ln u; pick tail_scale near the decay length of f.
QuadratureResult integrate_to_infinity(const Integrand& f, std::vector<double> breakpoints,
                                       double tail_scale, const AccuracyBudget& acc = {});

/// Radial form of a D-dimensional momentum integral
///   int d^D p / (2 pi)^D f(|p|) = Omega_D / (2 pi)^D int_0^inf p^{D-1} f(p) dp.
struct RadialIntegralSpec {
  int dimension = 3;
  Integrand integrand;
  /// Interior points where f changes scale or is singular; sorted, >= 0.
  std::vector<double> singular_points;
  AccuracyBudget acc;
  /// Decay length of the integrand at large p (the temperature, for thermal integrands).
  double tail_scale = 1.0;
};

/// Solid angle of the unit sphere in D dimensions, 2 pi^{D/2} / Gamma(D/2).
double solid_angle(int dimension);

double integrate_radial(const RadialIntegralSpec& spec);
QuadratureResult integrate_radial_detailed(const RadialIntegralSpec& spec);

struct SumResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long terms = 0;
};

/// sum_{k in Z} term(k) for terms decaying at least like 1/k^2.
///
/// Partial sums S_K over |k| <= K are formed for K doubling; exponentially
/// decaying sequences stop once a block becomes negligible, algebraic tails are
/// removed by Richardson extrapolation of S_K in 1/K.
SumResult sum_bilateral_detailed(const std::function<double(long)>& term, const AccuracyBudget& acc = {});
double sum_bilateral(const std::function<double(long)>& term, const AccuracyBudget& acc = {});

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Root of a continuous f on [lo, hi] with f(lo) f(hi) <= 0. The bracket is
/// shrunk until its width is below abs_tol + rel_tol * |x|. Throws
/// InternalError if the end values do not bracket a sign change.
RootResult solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol, double abs_tol = 0.0, int max_iterations = 200);

}  // namespace bec::quad
