#include <cmath>

#include "bec/condensate.hpp"
#include "bec/derivative.hpp"
#include "bec/errors.hpp"
#include "bec/quadrature.hpp"
#include "catch_amalgamated.hpp"
#include "support/reference.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace bec::condensate;
using bec::test::kPi;

namespace {

const double kZeta32 = bec::test::zeta_euler_maclaurin(1.5);

ChargeSpec nr(double rho) { return {rho, Regime::NonRelativistic}; }
ChargeSpec rel(double rho) { return {rho, Regime::Relativistic}; }

bec::thermo::ModelParams charged_model() {
  bec::thermo::ModelParams p;
  p.field_kind = bec::thermo::FieldKind::ChargedComplex;
  return p;
}

}  // namespace

TEST_CASE("non-relativistic excited density", "[condensate]") {
  const double nq = std::pow(1.0 / (2.0 * kPi), 1.5);
  REQUIRE_THAT(excited_density_nr(1.0, 0.0, 1.0), WithinRel(nq * kZeta32, 1e-13));
  REQUIRE_THAT(excited_density_nr(1.0, -40.0, 1.0), WithinRel(nq * std::exp(-40.0), 1e-15));

  bec::quad::RadialIntegralSpec spec;
  spec.integrand = [](double p) { return 1.0 / std::expm1(p * p / 2.0 + 0.5); };
  spec.acc.relative_tolerance = 1e-12;
  REQUIRE_THAT(excited_density_nr(1.0, -0.5, 1.0), WithinRel(bec::quad::integrate_radial(spec), 1e-9));
}

TEST_CASE("critical temperatures", "[condensate]") {
  const double tc = critical_temperature(nr(1.0), 1.0);
  REQUIRE_THAT(tc, WithinAbs(3.3124, 1e-3));
  REQUIRE_THAT(tc, WithinRel(2.0 * kPi / std::pow(kZeta32, 2.0 / 3.0), 1e-13));
  REQUIRE_THAT(critical_temperature_ur_leading(rel(1e4), 1.0), WithinRel(173.20508075688772, 1e-15));
  const double tc_rel = critical_temperature(rel(1e4), 1.0);
  REQUIRE_THAT(tc_rel, WithinRel(173.205, 1e-3));
  // The capacity at |mu| = m equals the charge at T_C.
  REQUIRE_THAT(charge_density_rel({tc_rel, 1.0, 0.0}, 1.0), WithinRel(1e4, 1e-9));
}

TEST_CASE("non-relativistic condensate fraction", "[condensate]") {
  const double tc = critical_temperature(nr(1.0), 1.0);
  const CondensateState s = solve_chemical_potential(0.5 * tc, nr(1.0), 1.0);
  REQUIRE(s.phase == Phase::Condensed);
  REQUIRE(s.mu_nr == 0.0);
  REQUIRE_THAT(s.condensate_density, WithinRel(1.0 - std::pow(0.5, 1.5), 1e-12));
  REQUIRE_THAT(s.excited_density + s.condensate_density, WithinRel(1.0, 1e-15));

  const CondensateState at = solve_chemical_potential(tc, nr(1.0), 1.0);
  REQUIRE_THAT(at.condensate_density, WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(at.mu_nr, WithinAbs(0.0, 1e-12));
}

TEST_CASE("non-relativistic Boltzmann inversion far above T_C", "[condensate]") {
  const double t = 20.0 * critical_temperature(nr(1.0), 1.0);
  const CondensateState s = solve_chemical_potential(t, nr(1.0), 1.0);
  REQUIRE(s.phase == Phase::Normal);
  REQUIRE_THAT(s.mu_nr, WithinRel(t * std::log(std::pow(2.0 * kPi / t, 1.5)), 1e-2));
  REQUIRE_THAT(s.excited_density, WithinRel(1.0, 1e-12));
}

TEST_CASE("chemical potential rises monotonically to the endpoint", "[condensate][property]") {
  const double tc = critical_temperature(nr(1.0), 1.0);
  double previous = -1e300;
  for (double f = 3.0; f >= 0.5; f -= 0.125) {
    const CondensateState s = solve_chemical_potential(f * tc, nr(1.0), 1.0);
    REQUIRE(s.mu_nr >= previous);
    REQUIRE(s.mu_nr <= 0.0);
    previous = s.mu_nr;
  }
}

TEST_CASE("relativistic solver conserves the charge", "[condensate]") {
  const ChargeSpec c = rel(1e4);
  const double tc = critical_temperature(c, 1.0);
  for (double f : {1.0 + 1e-6, 1.01, 1.5, 3.0}) {
    const CondensateState s = solve_chemical_potential(f * tc, c, 1.0);
    INFO("T/T_C = " << f);
    REQUIRE(s.phase == Phase::Normal);
    REQUIRE_THAT(charge_density_rel(s.point(), 1.0), WithinRel(1e4, 1e-9));
    REQUIRE(s.mass_gap > 0.0);
  }
  const CondensateState below = solve_chemical_potential(0.5 * tc, c, 1.0);
  REQUIRE(below.phase == Phase::Condensed);
  REQUIRE(below.mu == 1.0);
  REQUIRE_THAT(below.excited_density / 1e4, WithinRel(0.25, 2e-2));
}

TEST_CASE("negative charge mirrors the chemical potential", "[condensate][property]") {
  bec::thermo::ModelParams p = charged_model();
  const bec::thermo::Geometry g;
  for (auto [spec, t] : {std::pair{nr(-1.0), 4.0}, {nr(-1.0), 2.0}, {rel(-1e4), 200.0}, {rel(-1e4), 100.0}}) {
    ChargeSpec positive = spec;
    positive.density = -spec.density;
    const auto a = mutual_info_at_fixed_charge(t, spec, p, g);
    const auto b = mutual_info_at_fixed_charge(t, positive, p, g);
    REQUIRE(a.state.mu == -b.state.mu);
    REQUIRE_THAT(a.entropy.mutual_information, WithinRel(b.entropy.mutual_information, 1e-14));
  }
}

TEST_CASE("regime selection", "[condensate]") {
  REQUIRE(ChargeSpec{0.05}.resolve(1.0) == Regime::NonRelativistic);
  REQUIRE(ChargeSpec{100.0}.resolve(1.0) == Regime::Relativistic);
  REQUIRE(ChargeSpec{-100.0}.resolve(1.0) == Regime::Relativistic);
  REQUIRE_THROWS_AS(ChargeSpec{1.0}.resolve(1.0), bec::DomainError);
  REQUIRE_THROWS_AS(ChargeSpec{0.0}.validate(), bec::DomainError);
  const CondensateState s = solve_chemical_potential(10.0, nr(1.0), 1.0);
  REQUIRE_FALSE(s.warnings.empty());
  REQUIRE(solve_chemical_potential(1.0, nr(0.01), 1.0).warnings.empty());
}

TEST_CASE("boundary thermal part at fixed charge", "[condensate]") {
  const auto p = charged_model();
  const bec::thermo::Geometry g;
  const double tc = critical_temperature(nr(1.0), 1.0);
  for (double f : {1.2, 2.0, 5.0}) {
    REQUIRE_THAT(mutual_info_at_fixed_charge(f * tc, nr(1.0), p, g).entropy.boundary_thermal_part,
                 WithinRel(kPi / 6.0, 1e-12));
  }
  REQUIRE_THAT(mutual_info_at_fixed_charge(0.25 * tc, nr(1.0), p, g).entropy.boundary_thermal_part,
               WithinRel(kPi / 48.0, 1e-12));

  const double tc_rel = critical_temperature(rel(1e4), 1.0);
  REQUIRE_THAT(mutual_info_at_fixed_charge(0.5 * tc_rel, rel(1e4), p, g).entropy.boundary_thermal_part,
               WithinRel(kPi / 48.0 * 1e4, 2e-2));
}

TEST_CASE("fixed-charge entropy requires D = 3", "[condensate]") {
  auto p = charged_model();
  p.dimension = 2;
  REQUIRE_THROWS_AS(mutual_info_at_fixed_charge(1.0, nr(0.05), p, {}), bec::DomainError);
}

TEST_CASE("mutual information is continuous at T_C", "[condensate][property]") {
  const auto p = charged_model();
  const bec::thermo::Geometry g;
  for (const ChargeSpec& c : {nr(1.0), rel(1e4)}) {
    const double tc = critical_temperature(c, 1.0);
    double previous = 0.0;
    for (double d : {1e-2, 1e-3, 1e-4}) {
      const double up = mutual_info_at_fixed_charge(tc * (1.0 + d), c, p, g).entropy.mutual_information;
      const double down = mutual_info_at_fixed_charge(tc * (1.0 - d), c, p, g).entropy.mutual_information;
      const double gap = std::abs(up - down);
      REQUIRE(gap < 1e-4 * std::abs(up) * d / 1e-4);
      if (previous > 0.0) REQUIRE(gap < 0.2 * previous);  // first order in delta
      previous = gap;
    }
  }
}

TEST_CASE("sweep", "[condensate]") {
  const auto p = charged_model();
  const bec::thermo::Geometry g;
  const ChargeSpec c = nr(1.0);
  const double tc = critical_temperature(c, 1.0);

  const SweepTable one = sweep(c, p, g, {2.0});
  REQUIRE(one.rows.size() == 1);
  REQUIRE(one.rows[0].report.entropy.mutual_information ==
          mutual_info_at_fixed_charge(2.0, c, p, g).entropy.mutual_information);

  std::vector<double> grid;
  for (int i = 0; i < 21; ++i) grid.push_back(tc * (0.5 + 0.05 * i));
  const SweepTable serial = sweep(c, p, g, grid, {}, 1);
  const SweepTable parallel = sweep(c, p, g, grid, {}, 4);
  int flips = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(serial.rows[i].ok());
    REQUIRE(serial.rows[i].report.entropy.mutual_information ==
            parallel.rows[i].report.entropy.mutual_information);
    if (i > 0 && serial.rows[i].report.state.phase != serial.rows[i - 1].report.state.phase) ++flips;
  }
  REQUIRE(flips == 1);

  const SweepTable bad = sweep(c, p, g, {2.0, -1.0, 3.0}, {}, 1);
  REQUIRE(bad.rows[0].ok());
  REQUIRE_FALSE(bad.rows[1].ok());
  REQUIRE(bad.rows[2].ok());
}

TEST_CASE("non-relativistic discontinuity", "[condensate][discontinuity]") {
  const DiscontinuityResult r = discontinuity_estimate(nr(1.0), charged_model(), {});
  REQUIRE(r.left.converged);
  REQUIRE(r.right.converged);
  REQUIRE_THAT(r.jump, WithinRel(0.23710, 1e-4));
  REQUIRE(r.relative_deviation < 2e-2);
  REQUIRE_THAT(r.right_derivative, WithinAbs(0.0, 1e-6));
  REQUIRE_THAT(r.alt_convention_jump, WithinRel(r.closed_form_jump, 1e-10));
}

TEST_CASE("one-sided derivative", "[derivative]") {
  using namespace bec::numdiff;
  OneSidedOptions opt;
  opt.initial_step = 0.1;
  opt.agreement = 1e-10;
  auto kink = [](double x) { return x < 0.0 ? std::exp(x) : 1.0 + 3.0 * x + x * x; };
  const OneSidedDerivative left = one_sided_derivative(kink, 0.0, Side::Left, opt);
  const OneSidedDerivative right = one_sided_derivative(kink, 0.0, Side::Right, opt);
  REQUIRE(left.converged);
  REQUIRE(right.converged);
  REQUIRE_THAT(left.value, WithinRel(1.0, 1e-9));
  REQUIRE_THAT(right.value, WithinRel(3.0, 1e-12));
  // The stencil never samples the far side.
  auto left_only = [](double x) { return x > 0.0 ? std::nan("") : std::sin(x); };
  REQUIRE_THAT(one_sided_derivative(left_only, 0.0, Side::Left, opt).value, WithinRel(1.0, 1e-9));
  opt.initial_step = -1.0;
  REQUIRE_THROWS_AS(one_sided_derivative(kink, 0.0, Side::Left, opt), bec::DomainError);
}
