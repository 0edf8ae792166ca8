#include "bec/derivative.hpp"

#include <algorithm>
#include <cmath>

#include "bec/errors.hpp"

namespace bec::numdiff {

OneSidedDerivative one_sided_derivative(const std::function<double(double)>& f, double x0,
                                        Side side, const OneSidedOptions& options) {
  if (!(options.initial_step > 0.0)) throw DomainError("one_sided_derivative: step must be positive");
  if (options.min_halvings < 0 || options.max_halvings < options.min_halvings) {
    throw DomainError("one_sided_derivative: invalid halving limits");
  }
  const double sign = side == Side::Right ? 1.0 : -1.0;
  const int columns = std::max(0, options.richardson_columns);
  const double f0 = f(x0);

  OneSidedDerivative out;
  std::vector<std::vector<double>> table;
  int agreements = 0;
  double h = options.initial_step;
  for (int level = 0; level <= options.max_halvings; ++level, h *= 0.5) {
    const double f1 = f(x0 + sign * h);
    const double f2 = f(x0 + sign * 2.0 * h);
    const double f3 = f(x0 + sign * 3.0 * h);
    const double stencil = sign * (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h);

    std::vector<double> row{stencil};
    const int usable = std::min<int>(columns, level);
    for (int i = 1; i <= usable; ++i) {
      const double factor = std::exp2(2 + i) - 1.0;  // removes h^{2+i}
      row.push_back(row[i - 1] + (row[i - 1] - table[level - 1][i - 1]) / factor);
    }
    table.push_back(row);
    out.steps.push_back(h);
    out.raw.push_back(stencil);
    out.extrapolated.push_back(row.back());

    if (level >= std::max(1, options.min_halvings)) {
      const double current = out.extrapolated[level];
      const double previous = out.extrapolated[level - 1];
      const double diff = std::abs(current - previous);
      const double scale = std::max(std::abs(current), options.absolute_floor);
      out.value = current;
      out.error_estimate = diff;
      agreements = diff <= options.agreement * scale ? agreements + 1 : 0;
      if (agreements >= std::max(1, options.required_agreements)) {
        out.converged = true;
        return out;
      }
    }
  }
  out.value = out.extrapolated.back();
  return out;
}

}  // namespace bec::numdiff
