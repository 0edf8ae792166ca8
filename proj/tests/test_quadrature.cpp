#include <cmath>

#include "bec/errors.hpp"
#include "bec/quadrature.hpp"
#include "catch_amalgamated.hpp"
#include "support/reference.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace quad = bec::quad;
using bec::test::kPi;

TEST_CASE("finite-interval integrals", "[quadrature]") {
  REQUIRE_THAT(quad::integrate([](double x) { return std::sin(x); }, 0.0, kPi).value,
               WithinRel(2.0, 1e-13));
  // Integrable endpoint singularity: int_0^1 x^{-1/2} = 2.
  REQUIRE_THAT(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value,
               WithinRel(2.0, 1e-9));
}

TEST_CASE("radial integrals against series oracles", "[quadrature]") {
  quad::RadialIntegralSpec spec;
  spec.dimension = 1;
  spec.integrand = [](double p) { return std::exp(-p); };
  REQUIRE_THAT(quad::integrate_radial(spec), WithinRel(1.0 / kPi, 1e-12));

  spec.dimension = 3;
  spec.integrand = [](double p) { return 1.0 / std::expm1(p); };
  REQUIRE_THAT(quad::integrate_radial(spec),
               WithinRel(bec::test::bose_moment(2) / (2.0 * kPi * kPi), 1e-10));

  spec.integrand = [](double p) { return 1.0 / (p * std::expm1(p)); };
  spec.singular_points = {0.0};
  REQUIRE_THAT(quad::integrate_radial(spec), WithinRel(1.0 / 12.0, 1e-10));
}

TEST_CASE("radial integral with a 1/p^2 integrand cancelled by the D = 3 measure", "[quadrature]") {
  // int d^3p/(2pi)^3 e^{-p}/p^2 = 1/(2 pi^2).
  quad::RadialIntegralSpec spec;
  spec.integrand = [](double p) { return std::exp(-p) / (p * p); };
  REQUIRE_THAT(quad::integrate_radial(spec), WithinRel(1.0 / (2.0 * kPi * kPi), 1e-10));
}

TEST_CASE("algebraic tails are rejected, not silently mis-integrated", "[quadrature]") {
  // The tail map assumes exponential decay; 1/p^2 after the measure is out of contract.
  quad::RadialIntegralSpec spec;
  spec.integrand = [](double p) { return 2.0 / (p * p * (1.0 + p * p)); };
  REQUIRE_THROWS_AS(quad::integrate_radial(spec), bec::NonConvergenceError);
}

TEST_CASE("solid angle", "[quadrature]") {
  REQUIRE_THAT(quad::solid_angle(1), WithinRel(2.0, 1e-15));
  REQUIRE_THAT(quad::solid_angle(2), WithinRel(2.0 * kPi, 1e-15));
  REQUIRE_THAT(quad::solid_angle(3), WithinRel(4.0 * kPi, 1e-15));
}

TEST_CASE("bilateral sums", "[quadrature][sum]") {
  const double s1 = quad::sum_bilateral([](long k) { return 1.0 / (1.0 + 4.0 * kPi * kPi * k * k); });
  REQUIRE_THAT(s1, WithinRel(0.5 / std::tanh(0.5), 1e-10));
  REQUIRE_THAT(quad::sum_bilateral([](long k) { return k == 0 ? 3.25 : 0.0; }), WithinRel(3.25, 1e-15));
  double gauss = 1.0;
  for (int k = 1; k < 8; ++k) gauss += 2.0 * std::exp(-double(k) * k);
  REQUIRE_THAT(quad::sum_bilateral([](long k) { return std::exp(-double(k) * k); }),
               WithinRel(gauss, 1e-15));
}

TEST_CASE("bilateral sum refuses a divergent series", "[quadrature][sum]") {
  bec::AccuracyBudget acc;
  acc.max_terms = 1 << 14;
  REQUIRE_THROWS_AS(quad::sum_bilateral([](long k) { return 1.0 / (1.0 + std::abs(double(k))); }, acc),
                    bec::NonConvergenceError);
}

TEST_CASE("bracketed root", "[quadrature][root]") {
  const auto r = quad::solve_bracketed([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15);
  REQUIRE_THAT(r.root, WithinRel(std::sqrt(2.0), 1e-14));
  REQUIRE_THROWS_AS(quad::solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    bec::InternalError);
}

TEST_CASE("NaN integrands are reported", "[quadrature]") {
  REQUIRE_THROWS_AS(quad::integrate([](double) { return std::nan(""); }, 0.0, 1.0), bec::NanError);
}
