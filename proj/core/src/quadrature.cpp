#include "bec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "bec/errors.hpp"

namespace bec::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUnderflow = std::numeric_limits<double>::min();

// 21-point Kronrod abscissae (index 0 is the centre); the odd indices are the
// 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01,
    4.33395394129247191e-01, 5.62757134668604683e-01, 6.79409568299024406e-01,
    7.80817726586416897e-01, 8.65063366688984511e-01, 9.30157491355708226e-01,
    9.73906528517171720e-01, 9.95657163025808081e-01,
};
constexpr std::array<double, 11> kKronrodWeights = {
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01,
    1.34709217311473326e-01, 1.23491976262065851e-01, 1.09387158802297642e-01,
    9.31254545836976055e-02, 7.50396748109199528e-02, 5.47558965743519960e-02,
    3.25581623079647275e-02, 1.16946388673718743e-02,
};
constexpr std::array<double, 5> kGaussWeights = {
    2.95524224714752870e-01, 2.69266719309996355e-01, 2.19086362515982044e-01,
    1.49451349150580593e-01, 6.66713443086881376e-02,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int rule;  // 0: direct, 1: mapped tail

  bool operator<(const Segment& other) const { return error < other.error; }
};

// Integrand on a panel, either f itself or the mapped tail.
class PanelFunction {
public:
  PanelFunction(const Integrand& f, double tail_start, double tail_scale)
      : f_(f), tail_start_(tail_start), tail_scale_(tail_scale) {}

  double operator()(int rule, double x) const {
    double v;
    if (rule == 0) {
      v = f_(x);
    } else {
      const double p = tail_start_ - tail_scale_ * std::log(x);
      const double fp = f_(p);
      v = fp == 0.0 ? 0.0 : fp * tail_scale_ / x;
    }
    if (std::isnan(v)) {
      throw NanError("quadrature: integrand returned NaN at x = " + std::to_string(x));
    }
    return v;
  }

private:
  const Integrand& f_;
  double tail_start_;
  double tail_scale_;
};

Segment kronrod21(const PanelFunction& g, int rule, double a, double b, int& evaluations) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(rule, centre);
  double result_kronrod = kKronrodWeights[0] * fc;
  double result_gauss = 0.0;
  double result_abs = std::abs(result_kronrod);
  std::array<double, 11> lower{};
  std::array<double, 11> upper{};
  for (int j = 1; j <= 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    lower[j] = g(rule, centre - dx);
    upper[j] = g(rule, centre + dx);
    const double pair = lower[j] + upper[j];
    result_kronrod += kKronrodWeights[j] * pair;
    result_abs += kKronrodWeights[j] * (std::abs(lower[j]) + std::abs(upper[j]));
    if (j % 2 == 1) result_gauss += kGaussWeights[j / 2] * pair;
  }
  evaluations += 21;
  const double mean = 0.5 * result_kronrod;
  double result_asc = kKronrodWeights[0] * std::abs(fc - mean);
  for (int j = 1; j <= 10; ++j) {
    result_asc += kKronrodWeights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));
  }
  const double scale = std::abs(half);
  result_kronrod *= half;
  result_abs *= scale;
  result_asc *= scale;
  double error = std::abs((result_kronrod - result_gauss * half));
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > kUnderflow / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * result_abs, error);
  }
  return Segment{a, b, result_kronrod, error, rule};
}

QuadratureResult adaptive(const PanelFunction& g, const std::vector<Segment>& initial,
                          const AccuracyBudget& acc) {
  acc.validate();
  QuadratureResult out;
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (const auto& seed : initial) {
    Segment s = kronrod21(g, seed.rule, seed.a, seed.b, out.evaluations);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }
  while (true) {
    if (!std::isfinite(total) || !std::isfinite(total_error)) {
      throw NonConvergenceError("quadrature: non-finite partial sum (integrand not integrable, or "
                                "its tail decays too slowly for the exponential map)",
                                total_error);
    }
    if (total_error <= acc.relative_tolerance * std::abs(total) || total_error == 0.0) break;
    if (out.subdivisions >= acc.max_subdivisions) {
      throw NonConvergenceError("quadrature: subdivision limit reached, error estimate " +
                                    std::to_string(total_error) + " for value " +
                                    std::to_string(total),
                                total_error);
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      throw NonConvergenceError("quadrature: panel too narrow to subdivide, error estimate " +
                                    std::to_string(total_error),
                                total_error);
    }
    heap.pop();
    Segment left = kronrod21(g, worst.rule, worst.a, mid, out.evaluations);
    Segment right = kronrod21(g, worst.rule, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++out.subdivisions;
  }
  // Re-sum to shed the drift from incremental updates.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error_estimate = error;
  return out;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const AccuracyBudget& acc) {
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate: NaN limit");
  if (a == b) return {};
  PanelFunction g(f, 0.0, 1.0);
  return adaptive(g, {Segment{a, b, 0.0, 0.0, 0}}, acc);
}

QuadratureResult integrate_to_infinity(const Integrand& f, std::vector<double> breakpoints,
                                       double tail_scale, const AccuracyBudget& acc) {
  if (breakpoints.empty()) throw DomainError("integrate_to_infinity: need a lower limit");
  if (!(tail_scale > 0.0) || !std::isfinite(tail_scale)) {
    throw DomainError("integrate_to_infinity: tail_scale must be positive and finite");
  }
  for (double b : breakpoints) {
    if (!std::isfinite(b)) throw DomainError("integrate_to_infinity: non-finite breakpoint");
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end())) {
    throw DomainError("integrate_to_infinity: breakpoints must be sorted ascending");
  }
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  std::vector<Segment> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    panels.push_back(Segment{breakpoints[i], breakpoints[i + 1], 0.0, 0.0, 0});
  }
  panels.push_back(Segment{0.0, 1.0, 0.0, 0.0, 1});
  PanelFunction g(f, breakpoints.back(), tail_scale);
  return adaptive(g, panels, acc);
}

double solid_angle(int dimension) {
  if (dimension < 1) throw DomainError("solid_angle: dimension must be positive");
  return 2.0 * std::pow(kPi, 0.5 * dimension) / std::tgamma(0.5 * dimension);
}

QuadratureResult integrate_radial_detailed(const RadialIntegralSpec& spec) {
  if (spec.dimension < 1 || spec.dimension > 4) {
    throw DomainError("integrate_radial: dimension must be 1..4, got " +
                      std::to_string(spec.dimension));
  }
  if (!spec.integrand) throw DomainError("integrate_radial: empty integrand");
  if (!std::is_sorted(spec.singular_points.begin(), spec.singular_points.end())) {
    throw DomainError("integrate_radial: singular_points must be sorted ascending");
  }
  std::vector<double> breakpoints{0.0};
  for (double p : spec.singular_points) {
    if (p < 0.0) throw DomainError("integrate_radial: singular points must be non-negative");
    if (p > breakpoints.back()) breakpoints.push_back(p);
  }
  const int power = spec.dimension - 1;
  const Integrand& f = spec.integrand;
  Integrand weighted = [&f, power](double p) {
    const double v = f(p);
    if (v == 0.0) return 0.0;
    switch (power) {
      case 0: return v;
      case 1: return p * v;
      case 2: return p * p * v;
      default: return p * p * p * v;
    }
  };
  QuadratureResult r = integrate_to_infinity(weighted, breakpoints, spec.tail_scale, spec.acc);
  const double factor = solid_angle(spec.dimension) / std::pow(2.0 * kPi, spec.dimension);
  r.value *= factor;
  r.error_estimate *= factor;
  return r;
}

double integrate_radial(const RadialIntegralSpec& spec) {
  return integrate_radial_detailed(spec).value;
}

SumResult sum_bilateral_detailed(const std::function<double(long)>& term, const AccuracyBudget& acc) {
  acc.validate();
  constexpr int kMaxColumns = 6;
  auto checked = [&term](long k) {
    const double v = term(k);
    if (std::isnan(v)) throw NanError("sum_bilateral: term returned NaN at k = " + std::to_string(k));
    return v;
  };

  long K = 16;
  double sum = checked(0);
  double abs_sum = std::abs(sum);
  for (long k = 1; k <= K; ++k) {
    const double pair = checked(k) + checked(-k);
    sum += pair;
    abs_sum += std::abs(pair);
  }
  std::vector<std::array<double, kMaxColumns + 1>> table;
  table.push_back({});
  table[0][0] = sum;
  double previous_block = -1.0;
  int slow_levels = 0;
  double last_error = std::numeric_limits<double>::infinity();

  while (2 * K <= acc.max_terms) {
    double block = 0.0;
    double block_abs = 0.0;
    for (long k = K + 1; k <= 2 * K; ++k) {
      const double a = checked(k);
      const double b = checked(-k);
      block += a + b;
      block_abs += std::abs(a) + std::abs(b);
    }
    K *= 2;
    sum += block;
    abs_sum += block_abs;
    if (block_abs <= 1e-17 * abs_sum) {
      return SumResult{sum, block_abs, 2 * K + 1};
    }
    // Terms decaying like 1/k^p give block ratios 2^{1-p}; p >= 2 means <= 1/2.
    if (previous_block > 0.0 && block_abs > 0.7 * previous_block) {
      ++slow_levels;
    } else {
      slow_levels = 0;
    }
    previous_block = block_abs;

    const std::size_t row = table.size();
    table.push_back({});
    table[row][0] = sum;
    const int columns = std::min<int>(static_cast<int>(row), kMaxColumns);
    for (int i = 1; i <= columns; ++i) {
      table[row][i] = table[row][i - 1] +
                      (table[row][i - 1] - table[row - 1][i - 1]) / (std::exp2(i) - 1.0);
    }
    if (row >= 2 && slow_levels < 2) {
      const int prev_columns = std::min<int>(static_cast<int>(row) - 1, kMaxColumns);
      const double best = table[row][columns];
      const double error = std::abs(best - table[row - 1][prev_columns]);
      last_error = error;
      if (error <= acc.relative_tolerance * std::abs(best) || error <= 1e-17 * abs_sum) {
        return SumResult{best, error, 2 * K + 1};
      }
    }
  }
  throw NonConvergenceError(
      "sum_bilateral: no convergence within max_terms (terms must decay at least like 1/k^2)",
      last_error);
}

double sum_bilateral(const std::function<double(long)>& term, const AccuracyBudget& acc) {
  return sum_bilateral_detailed(term, acc).value;
}

RootResult solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol, double abs_tol, int max_iterations) {
  if (!(lo <= hi)) throw DomainError("solve_bracketed: need lo <= hi");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::isnan(f_lo) || std::isnan(f_hi)) throw NanError("solve_bracketed: NaN at bracket end");
  if (f_lo == 0.0) return RootResult{lo, 0.0, 0};
  if (f_hi == 0.0) return RootResult{hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw InternalError("solve_bracketed: f(lo) and f(hi) have the same sign");
  }
  auto tolerance = [rel_tol, abs_tol](double a, double b) {
    return std::abs(b - a) <= abs_tol + rel_tol * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto bracket =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tolerance, iterations);
  if (iterations >= static_cast<std::uintmax_t>(max_iterations) &&
      !tolerance(bracket.first, bracket.second)) {
    throw NonConvergenceError("solve_bracketed: iteration limit reached",
                              std::abs(bracket.second - bracket.first));
  }
  const double root = 0.5 * (bracket.first + bracket.second);
  return RootResult{root, f(root), static_cast<int>(iterations)};
}

}  // namespace bec::quad
