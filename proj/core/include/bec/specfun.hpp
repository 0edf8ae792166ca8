#pragma once

// Special functions used throughout the library. Everything here is built on
// <cmath> elementary functions only; all functions are pure.

namespace bec {

/// Accuracy knobs shared by series, quadrature and sums.
struct AccuracyBudget {
  double relative_tolerance = 1e-10;
  int max_terms = 1 << 20;
  int max_subdivisions = 4000;

  /// Throws DomainError unless 0 < relative_tolerance < 1e-2 and max_terms >= 16.
  void validate() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

namespace specfun {

/// Polylogarithm Li_s(z) = sum_{n>=1} z^n / n^s for real s and z in [0, 1].
///
/// For 1 - z < 0.1 the expansion in delta = -ln z is used; otherwise the
/// defining series is summed with a geometric tail bound.
double polylog(double s, double z, const AccuracyBudget& acc = {});

/// Riemann zeta for real s != 1. Accurate to ~1e-15 relative for s > 1.
double zeta(double s);

/// Upper incomplete gamma Gamma(a, x) for a <= 1 (any a > 0 also accepted), x > 0.
double gamma_upper(double a, double x);

/// Exponential integral E_1(x) = Gamma(0, x), x > 0.
double expint_e1(double x);

/// Modified Bessel I_nu(x), 0 <= nu <= 256, 0 <= x. Throws OverflowError when
/// the result exceeds double range; use bessel_i_scaled for large x.
double bessel_i(double nu, double x);

/// exp(-x) I_nu(x), valid for 0 <= x <= 1e4.
double bessel_i_scaled(double nu, double x);

/// Ordinary Bessel J_nu(x), 0 <= nu <= 256, 0 <= x <= 1e4.
double bessel_j(double nu, double x);

namespace detail {
// Individual branches, exposed so tests can compare them at switchover points.
double bessel_i_scaled_series(double nu, double x);
double bessel_i_scaled_asymptotic(double nu, double x);
double bessel_j_series(double nu, double x);
double bessel_j_miller(double nu, double x);
}  // namespace detail

}  // namespace specfun
}  // namespace bec
