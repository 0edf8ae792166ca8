#pragma once

// Numerical checks of the summation and integral identities behind the
// entropy formulas. Oracles use only specfun and quadrature.

#include <string>
#include <utility>
#include <vector>

#include "bec/specfun.hpp"

namespace bec::oracles {

struct OracleReport {
  std::string identity_name;
  std::string family;
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs| / max(|rhs|, floor) with a per-identity floor.
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Informational rows document an alternative reading and never gate.
  bool informational = false;
  std::vector<std::pair<std::string, double>> parameters;
  std::string note;
};

/// 1/2 sum_m int_0^inf e^{-alpha q} I_{|m|/n}(q) dq against
/// coth(arccosh(alpha)/(2n)) / (2 sqrt(alpha^2 - 1)). Orders |m| <= 2 are
/// integrated numerically, the rest use the Laplace transform r^{|m|/n}/sqrt(alpha^2-1).
OracleReport check_f_n_alpha(double n, double alpha, const AccuracyBudget& acc = {});

/// The same identity with the n-free right-hand side coth((alpha + sqrt(alpha^2-1))/2)/(2 sqrt(alpha^2-1)).
OracleReport check_f_n_alpha_n_free(double n, double alpha, const AccuracyBudget& acc = {});

/// Least-squares fit of F_n(1+eps) - n/(2 eps) over eps in {1e-3, 1e-4, 1e-5};
/// the intercept must equal (1/n - n)/12 to 1e-4.
OracleReport check_f_n_finite_part(double n, const AccuracyBudget& acc = {});

/// sum_k Re 1/((w_k + i mu)^2 + omega^2), w_k = 2 pi k/beta, against
/// (1/2)((omega-mu)/omega) S(omega-mu) + (1/2)((omega+mu)/omega) S(omega+mu),
/// S(x) = (beta/2x) coth(beta x/2).
OracleReport check_matsubara_sum(double beta, double omega, double mu,
                                 const AccuracyBudget& acc = {});

/// The Matsubara sum against S with coth(beta x) in place of coth(beta x/2).
OracleReport check_matsubara_sum_full_angle(double beta, double omega, double mu,
                                            const AccuracyBudget& acc = {});

/// omega sum_k beta^2/((beta omega)^2 + (2 pi k)^2) against the numerical
/// omega-derivative of beta omega/2 + ln(1 - e^{-beta omega}).
OracleReport check_log_sum_derivative(double beta, double omega, const AccuracyBudget& acc = {});

/// sum_nu exp(-(nu beta)^2/4t - mu nu beta) against
/// (sqrt(4 pi t)/beta) sum_k exp(-t (w_k^2 - mu^2)) cos(2 t mu w_k).
OracleReport check_poisson_resummation(double beta, double t, double mu,
                                       const AccuracyBudget& acc = {});

/// sum_m i^{-m} J_m(z) = e^{-iz}; real and imaginary parts.
std::vector<OracleReport> check_jacobi_anger(double z, const AccuracyBudget& acc = {});

/// sum_m J_m(z)^2 = 1.
OracleReport check_bessel_square_sum(double z, const AccuracyBudget& acc = {});

/// int_0^inf rho e^{-rho^2/R^2} J_nu(a rho)^2 drho = (R^2/2) e^{-y} I_nu(y), y = a^2 R^2/2.
OracleReport check_weber_integral(double nu, double a, double radius,
                                  const AccuracyBudget& acc = {});

/// e^{-y} sum_m I_{|m|/n}(y) / n -> 1 with y = a_R^2/2; exact at n = 1.
OracleReport check_bessel_order_sum(double n, double a_r, const AccuracyBudget& acc = {});

/// Families: f_n_alpha, matsubara, log_sum, poisson, bessel. Empty selects all.
const std::vector<std::string>& family_names();

/// Runs the fixed parameter lattice of the selected families, concurrently,
/// returning rows in a fixed order. Unknown names raise DomainError.
std::vector<OracleReport> run_suite(const std::vector<std::string>& families = {},
                                    unsigned threads = 0);

/// True when every non-informational report passed.
bool all_passed(const std::vector<OracleReport>& reports);

}  // namespace bec::oracles
