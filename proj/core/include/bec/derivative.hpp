#pragma once

#include <functional>
#include <vector>

namespace bec::numdiff {

enum class Side { Left, Right };

struct OneSidedOptions {
  double initial_step = 1e-2;
  /// Halvings performed before convergence may be declared.
  int min_halvings = 4;
  int max_halvings = 26;
  /// Successive extrapolants must agree to this relative tolerance.
  double agreement = 5e-3;
  /// Consecutive agreeing levels required, guarding against a transient plateau.
  int required_agreements = 2;
  /// Derivatives below this magnitude are compared absolutely.
  double absolute_floor = 0.0;
  /// Richardson columns on top of the raw stencil (each removes one power of h).
  int richardson_columns = 2;
};

struct OneSidedDerivative {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  std::vector<double> steps;
  std::vector<double> raw;           // stencil value per step
  std::vector<double> extrapolated;  // best Richardson value per step
};

/// Derivative of f at x0 using only points on one side: the 4-point stencil
/// (-11 f0 + 18 f1 - 9 f2 + 2 f3) / 6h (error O(h^3)) with step halving, then
/// Richardson elimination of the h^3, h^4, ... terms.
OneSidedDerivative one_sided_derivative(const std::function<double(double)>& f, double x0,
                                        Side side, const OneSidedOptions& options);

}  // namespace bec::numdiff
