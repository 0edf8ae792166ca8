#include "bec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bec/errors.hpp"

namespace bec {

void AccuracyBudget::validate() const {
  if (!(relative_tolerance > 0.0 && relative_tolerance < 1e-2)) {
    throw DomainError("AccuracyBudget: relative_tolerance must lie in (0, 1e-2), got " +
                      std::to_string(relative_tolerance));
  }
  if (max_terms < 16) {
    throw DomainError("AccuracyBudget: max_terms must be at least 16");
  }
  if (max_subdivisions < 1) {
    throw DomainError("AccuracyBudget: max_subdivisions must be positive");
  }
}

namespace specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kMaxOrder = 256.0;

bool is_integer(double v) { return std::floor(v) == v; }

// Borwein's accelerated alternating series for the Dirichlet eta function,
// valid for s > 0. Truncation error is below 3 / (3 + sqrt 8)^n.
double eta_borwein(double s) {
  constexpr int n = 48;
  double d[n + 1];
  double term = 1.0;
  double acc = 1.0;
  d[0] = acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = acc;
  }
  double sum = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (d[k] - d[n]) * std::pow(k + 1.0, -s);
  }
  return -sum / d[n];
}

// Expansion of Li_s(e^{-delta}) about delta = 0, used for z close to 1.
double polylog_near_one(double s, double delta) {
  double sum = 0.0;
  const bool integer_order = is_integer(s) && s >= 2.0;
  const int pole_k = integer_order ? static_cast<int>(s) - 1 : -1;
  if (!integer_order) {
    sum = std::tgamma(1.0 - s) * std::pow(delta, s - 1.0);
  }
  double power = 1.0;  // (-delta)^k / k!
  int small_in_a_row = 0;
  for (int k = 0; k < 400; ++k) {
    double term;
    if (k == pole_k) {
      double harmonic = 0.0;
      for (int j = 1; j <= pole_k; ++j) harmonic += 1.0 / j;
      term = power * (harmonic - std::log(delta));
    } else {
      term = zeta(s - k) * power;
    }
    sum += term;
    if (k > s + 2.0 && std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_in_a_row >= 2) return sum;
    } else {
      small_in_a_row = 0;
    }
    power *= -delta / (k + 1.0);
  }
  throw NonConvergenceError("polylog: near-one expansion did not converge", std::abs(power));
}

double series_polylog(double s, double z, const AccuracyBudget& acc) {
  double sum = 0.0;
  double zn = 1.0;
  // Terms stop growing once n exceeds this.
  const double peak = s < 0.0 ? -s / -std::log(z) : 0.0;
  for (int n = 1; n <= acc.max_terms; ++n) {
    zn *= z;
    if (zn == 0.0) return sum;
    const double term = zn * std::pow(static_cast<double>(n), -s);
    sum += term;
    if (n > peak) {
      // Term ratios tend to z from below (s >= 0) or from above (s < 0).
      const double next = zn * z * std::pow(n + 1.0, -s);
      const double ratio = s >= 0.0 ? z : next / term;
      if (ratio < 1.0 && next / (1.0 - ratio) <= 0.25 * kEps * std::abs(sum)) return sum;
    }
  }
  throw NonConvergenceError("polylog: series exceeded max_terms", zn);
}

double gamma_upper_positive(double a, double x) {
  // a > 0, x > 0
  if (a == 1.0) return std::exp(-x);
  if (a == 0.5) return std::sqrt(kPi) * std::erfc(std::sqrt(x));
  const double log_prefactor = a * std::log(x) - x;
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return std::tgamma(a) - sum * std::exp(log_prefactor);
  }
  // Modified Lentz continued fraction.
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor) * h;
}

}  // namespace

double zeta(double s) {
  if (std::isnan(s)) throw DomainError("zeta: NaN argument");
  if (s == 1.0) throw DivergenceError("zeta: pole at s = 1");
  if (s > 60.0) return 1.0 + std::exp2(-s) + std::pow(3.0, -s);
  if (s > 0.0) {
    // 1 - 2^{1-s} without cancellation near s = 1
    const double denom = -std::expm1((1.0 - s) * std::log(2.0));
    return eta_borwein(s) / denom;
  }
  if (s == 0.0) return -0.5;
  if (is_integer(s) && std::fmod(-s, 2.0) == 0.0) return 0.0;
  // Functional equation.
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
         std::tgamma(1.0 - s) * zeta(1.0 - s);
}

double polylog(double s, double z, const AccuracyBudget& acc) {
  acc.validate();
  if (std::isnan(s) || std::isnan(z)) throw DomainError("polylog: NaN argument");
  if (z < 0.0 || z > 1.0) {
    throw DomainError("polylog: z must lie in [0, 1], got " + std::to_string(z));
  }
  if (z == 0.0) return 0.0;
  if (z == 1.0) {
    if (s <= 1.0) throw DivergenceError("polylog: Li_s(1) diverges for s <= 1");
    return zeta(s);
  }
  if (s == 1.0) return -std::log1p(-z);
  if (1.0 - z < 0.1) return polylog_near_one(s, -std::log1p(z - 1.0));
  return series_polylog(s, z, acc);
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1: x must be positive");
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double contribution = term / k;
      sum += contribution;
      if (std::abs(contribution) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
  }
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x);
}

double gamma_upper(double a, double x) {
  if (std::isnan(a) || std::isnan(x)) throw DomainError("gamma_upper: NaN argument");
  if (!(x > 0.0)) throw DomainError("gamma_upper: x must be positive");
  if (a > 0.0) return gamma_upper_positive(a, x);

  // Downward recurrence Gamma(b-1, x) = (Gamma(b, x) - x^{b-1} e^{-x}) / (b-1)
  // from a seed in (0, 1], or from E_1 when a is an integer.
  double b;
  double value;
  if (is_integer(a)) {
    b = 0.0;
    value = expint_e1(x);
  } else {
    b = a + std::ceil(-a);
    value = gamma_upper_positive(b, x);
  }
  const double log_x = std::log(x);
  while (b - 1.0 >= a - 0.5) {
    value = (value - std::exp((b - 1.0) * log_x - x)) / (b - 1.0);
    b -= 1.0;
  }
  return value;
}

namespace detail {

double bessel_i_scaled_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  double log_scale = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x;
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  constexpr double kRescale = 1e280;
  for (int k = 1; k < 200000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += std::log(kRescale);
    }
    if (k * (k + nu) > q && term <= 1e-17 * sum) break;
  }
  return sum * std::exp(log_scale);
}

double bessel_i_scaled_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (next == 0.0) break;
    if (std::abs(next) > std::abs(term)) break;  // asymptotic series turned
    sum += next;
    term = next;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_j_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double q = 0.25 * x * x;
  double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= -q / (k * (k + nu));
    sum += term;
    if (k * (k + nu) > q && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    if (term == 0.0) break;
  }
  return sum;
}

double bessel_j_miller(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double base = nu - std::floor(nu);
  const int target = static_cast<int>(std::floor(nu));
  const double scale = std::max({static_cast<double>(target), x, 1.0});
  int top = static_cast<int>(scale + 10.0 + std::sqrt(160.0 * scale));
  top += top % 2;

  // Neumann normalization: sum_k c_k J_{base+2k}(x) = (x/2)^base with
  // c_0 = Gamma(base+1), c_k = (base+2k) Gamma(base+k)/k!.
  auto weight = [base](int k) {
    if (k == 0) return std::tgamma(base + 1.0);
    return (base + 2.0 * k) * std::exp(std::lgamma(base + k) - std::lgamma(k + 1.0));
  };

  double upper = 0.0;  // J_{base+k+1}
  double current = 1e-30;  // J_{base+k}
  double result = 0.0;
  double norm = 0.0;
  constexpr double kBig = 1e250;
  for (int k = top; k >= 0; --k) {
    if (k == target) result = current;
    if (k % 2 == 0) norm += weight(k / 2) * current;
    if (k == 0) break;
    const double lower = 2.0 * (base + k) / x * current - upper;
    upper = current;
    current = lower;
    if (std::abs(current) > kBig) {
      current /= kBig;
      upper /= kBig;
      result /= kBig;
      norm /= kBig;
    }
  }
  return result * std::pow(0.5 * x, base) / norm;
}

}  // namespace detail

double bessel_i_scaled(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x)) throw DomainError("bessel_i: NaN argument");
  if (nu < 0.0 || nu > kMaxOrder) throw DomainError("bessel_i: order must lie in [0, 256]");
  if (x < 0.0 || x > 1e4) throw DomainError("bessel_i: argument must lie in [0, 1e4]");
  if (x >= 30.0 && x >= nu * nu) return detail::bessel_i_scaled_asymptotic(nu, x);
  return detail::bessel_i_scaled_series(nu, x);
}

double bessel_i(double nu, double x) {
  const double scaled = bessel_i_scaled(nu, x);
  if (x > 700.0) {
    const double log_value = std::log(scaled) + x;
    if (log_value > std::log(std::numeric_limits<double>::max())) {
      throw OverflowError("bessel_i: result overflows double at x = " + std::to_string(x));
    }
  }
  return scaled * std::exp(x);
}

double bessel_j(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x)) throw DomainError("bessel_j: NaN argument");
  if (nu < 0.0 || nu > kMaxOrder) throw DomainError("bessel_j: order must lie in [0, 256]");
  if (x < 0.0 || x > 1e4) throw DomainError("bessel_j: argument must lie in [0, 1e4]");
  if (x <= 8.0 || 0.25 * x * x <= nu + 1.0) return detail::bessel_j_series(nu, x);
  return detail::bessel_j_miller(nu, x);
}

}  // namespace specfun
}  // namespace bec
