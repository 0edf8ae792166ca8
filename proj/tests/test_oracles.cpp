#include <cmath>
#include <set>

#include "bec/errors.hpp"
#include "bec/oracles.hpp"
#include "catch_amalgamated.hpp"
#include "support/reference.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace bec::oracles;

TEST_CASE("F_n(alpha) identity", "[oracles]") {
  const OracleReport a = check_f_n_alpha(1.0, 2.0);
  REQUIRE(a.passed);
  // Geometric-series closed form at n = 2, alpha = 1.5.
  const double root = std::sqrt(1.25);
  const double s = std::sqrt(1.5 - root);
  const OracleReport b = check_f_n_alpha(2.0, 1.5);
  REQUIRE(b.passed);
  REQUIRE_THAT(b.lhs, WithinRel((1.0 + s) / ((1.0 - s) * 2.0 * root), 1e-8));
  REQUIRE_THROWS_AS(check_f_n_alpha(0.5, 2.0), bec::DomainError);
  REQUIRE_THROWS_AS(check_f_n_alpha(2.0, 1.0), bec::DomainError);
}

TEST_CASE("F_n finite part", "[oracles]") {
  REQUIRE_THAT(check_f_n_finite_part(1.0).lhs, WithinAbs(0.0, 1e-4));
  REQUIRE_THAT(check_f_n_finite_part(2.0).lhs, WithinAbs(-0.125, 1e-4));
  REQUIRE(check_f_n_finite_part(3.0).passed);
}

TEST_CASE("the n-free F_n right-hand side does not hold", "[oracles]") {
  const OracleReport r = check_f_n_alpha_n_free(2.0, 2.0);
  REQUIRE(r.informational);
  REQUIRE_FALSE(r.passed);
}

TEST_CASE("Matsubara sums", "[oracles]") {
  const OracleReport r = check_matsubara_sum(1.0, 1.0, 0.0);
  REQUIRE(r.passed);
  REQUIRE_THAT(r.lhs, WithinRel(0.5 / std::tanh(0.5), 1e-10));
  // Large beta omega: beta/(2 omega).
  REQUIRE_THAT(check_matsubara_sum(40.0, 2.0, 0.0).rhs, WithinRel(10.0, 1e-15));
  REQUIRE(check_matsubara_sum(2.0, 1.0, -0.7).lhs == check_matsubara_sum(2.0, 1.0, 0.7).lhs);
  REQUIRE_FALSE(check_matsubara_sum_full_angle(1.0, 1.0, 0.0).passed);
  REQUIRE_THROWS_AS(check_matsubara_sum(1.0, 1.0, 1.0), bec::DomainError);
}

TEST_CASE("log-sum derivative", "[oracles]") {
  const OracleReport r = check_log_sum_derivative(1.0, 2.0);
  REQUIRE(r.passed);
  REQUIRE_THAT(r.lhs, WithinRel(0.5 / std::tanh(1.0), 1e-12));
  REQUIRE_THAT(check_log_sum_derivative(1.0, 60.0).lhs, WithinRel(0.5, 1e-12));
  // Same sum as the Matsubara check at mu = 0, up to the omega prefactor.
  REQUIRE_THAT(check_log_sum_derivative(0.5, 1.0).lhs, WithinRel(check_matsubara_sum(0.5, 1.0, 0.0).lhs, 1e-12));
}

TEST_CASE("Poisson resummation", "[oracles]") {
  REQUIRE(check_poisson_resummation(1.0, 0.3, 0.0).passed);
  REQUIRE_THAT(check_poisson_resummation(1.0, 1e-3, 0.0).lhs, WithinRel(1.0, 1e-15));
  REQUIRE_THAT(check_poisson_resummation(1.0, 1.0, -0.5).lhs,
               WithinRel(check_poisson_resummation(1.0, 1.0, 0.5).lhs, 1e-14));
}

TEST_CASE("Bessel identities", "[oracles]") {
  for (const auto& r : check_jacobi_anger(2.0)) REQUIRE(r.passed);
  REQUIRE(check_bessel_square_sum(3.0).passed);
  REQUIRE(check_weber_integral(0.5, 2.0, 1.5).passed);
  REQUIRE_THAT(check_bessel_order_sum(1.0, 7.0).lhs, WithinRel(1.0, 1e-13));
  // No n-dependent plateau: the deviation stays at rounding level as a_R grows.
  for (double a_r : {5.0, 10.0, 20.0}) REQUIRE(check_bessel_order_sum(2.0, a_r).relative_error < 1e-10);
}

TEST_CASE("suite", "[oracles]") {
  const auto all = run_suite();
  REQUIRE(all_passed(all));
  std::set<std::string> families;
  for (const auto& r : all) families.insert(r.family);
  REQUIRE(families.size() == family_names().size());

  const auto only = run_suite({"matsubara"});
  REQUIRE(only.size() == 28);
  for (const auto& r : only) REQUIRE(r.family == "matsubara");
  REQUIRE_THROWS_AS(run_suite({"nope"}), bec::DomainError);

  // Row order is fixed whatever the thread count.
  const auto serial = run_suite({}, 1);
  REQUIRE(serial.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(serial[i].lhs == all[i].lhs);
}
