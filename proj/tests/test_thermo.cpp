#include <cmath>

#include "bec/errors.hpp"
#include "bec/quadrature.hpp"
#include "bec/thermo.hpp"
#include "catch_amalgamated.hpp"
#include "support/reference.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace bec::thermo;
using bec::test::kPi;

namespace {

ModelParams model(double mass, int dimension, FieldKind kind = FieldKind::NeutralReal) {
  ModelParams p;
  p.mass = mass;
  p.dimension = dimension;
  p.field_kind = kind;
  return p;
}

}  // namespace

TEST_CASE("dispersion", "[thermo]") {
  REQUIRE(dispersion(0.0, 2.0) == 2.0);
  REQUIRE(dispersion(3.0, 4.0) == 5.0);
  REQUIRE(dispersion(7.0, 0.0) == 7.0);
}

TEST_CASE("thermal entropy massless limits", "[thermo]") {
  const Geometry geom;
  // Stefan-Boltzmann: s = 2 pi^2 T^3 / 45.
  REQUIRE_THAT(thermal_entropy(model(1e-9, 3), geom, {1.0}),
               WithinRel(4.0 * bec::test::bose_moment(3) / (6.0 * kPi * kPi), 1e-8));
  REQUIRE_THAT(thermal_entropy(model(1e-9, 3), geom, {1.0}), WithinRel(2.0 * kPi * kPi / 45.0, 1e-8));
  REQUIRE_THAT(thermal_entropy(model(1e-12, 1), geom, {1.0}), WithinRel(kPi / 3.0, 1e-8));
}

TEST_CASE("thermal entropy is Boltzmann suppressed at low T", "[thermo]") {
  const double s = thermal_entropy(model(1.0, 3), {}, {0.02});
  REQUIRE(s > 0.0);
  REQUIRE(s < 1e-18);
}

TEST_CASE("zero-temperature entanglement entropy", "[thermo]") {
  Geometry geom;
  ModelParams p = model(1.0, 1);
  const double s0 = zero_t_entanglement(p, geom);
  REQUIRE_THAT(s0, WithinRel((2.0 * std::log(1e4) - bec::test::kEulerGamma) / 12.0, 1e-7));
  REQUIRE_THAT(s0, WithinAbs(std::log(1e4) / 6.0 - bec::test::kEulerGamma / 12.0, 1e-7));
  for (int d : {1, 2, 3}) {
    ModelParams n = model(0.7, d);
    ModelParams c = model(0.7, d, FieldKind::ChargedComplex);
    REQUIRE_THAT(zero_t_entanglement(c, geom), WithinRel(2.0 * zero_t_entanglement(n, geom), 1e-15));
  }
}

TEST_CASE("zero-temperature entropy scales with the boundary area", "[thermo][property]") {
  Geometry a, b;
  b.boundary_area = 3.5;
  const ModelParams p = model(1.3, 3);
  REQUIRE_THAT(zero_t_entanglement(p, b), WithinRel(3.5 * zero_t_entanglement(p, a), 1e-15));
}

TEST_CASE("neutral boundary thermal part", "[thermo]") {
  // Massless D = 3: (pi/3) T^2/12.
  REQUIRE_THAT(occupation_over_energy(3, 0.0, 1.0), WithinRel(1.0 / 12.0, 1e-10));
  const auto r = mutual_info_neutral(model(1e-9, 3), {}, {1.0});
  REQUIRE_THAT(r.boundary_thermal_part, WithinRel(kPi / 36.0, 1e-8));
  REQUIRE(r.mutual_information == r.zero_t_part + r.boundary_thermal_part);
  REQUIRE_THAT(r.geometric_entropy, WithinRel(r.mutual_information - 0.5 * r.thermal_entropy, 1e-15));
}

TEST_CASE("mutual information tends to the ground state as T -> 0", "[thermo]") {
  const auto r = mutual_info_neutral(model(1.0, 3), {}, {0.01});
  REQUIRE_THAT(r.mutual_information, WithinRel(r.zero_t_part, 1e-15));
}

TEST_CASE("D = 1 high-temperature boundary term", "[thermo]") {
  const auto r = mutual_info_neutral(model(1.0, 1), {}, {1000.0});
  REQUIRE_THAT(r.boundary_thermal_part, WithinRel(kPi / 6.0 * 1000.0, 1e-2));
}

TEST_CASE("charged field reduces to two neutral fields at mu = 0", "[thermo][property]") {
  for (int d : {1, 2, 3}) {
    for (double m : {0.5, 1.0, 2.0}) {
      for (double t : {0.3, 1.0, 4.0}) {
        const auto n = mutual_info_neutral(model(m, d), {}, {t});
        const auto c = mutual_info_charged(model(m, d, FieldKind::ChargedComplex), {}, {t});
        INFO("D = " << d << ", m = " << m << ", T = " << t);
        REQUIRE_THAT(c.boundary_thermal_part, WithinRel(2.0 * n.boundary_thermal_part, 1e-10));
        REQUIRE_THAT(c.zero_t_part, WithinRel(2.0 * n.zero_t_part, 1e-15));
        REQUIRE_THAT(c.thermal_entropy, WithinRel(2.0 * n.thermal_entropy, 1e-10));
      }
    }
  }
}

TEST_CASE("charged results are even in mu", "[thermo][property]") {
  const ModelParams p = model(1.0, 3, FieldKind::ChargedComplex);
  for (double mu : {0.2, 0.9, 1.0}) {
    const auto plus = mutual_info_charged(p, {}, {0.8, mu});
    const auto minus = mutual_info_charged(p, {}, {0.8, -mu});
    REQUIRE_THAT(minus.mutual_information, WithinRel(plus.mutual_information, 1e-12));
    REQUIRE_THAT(minus.thermal_entropy, WithinRel(plus.thermal_entropy, 1e-12));
    REQUIRE_THAT(charge_density(3, 1.0, {0.8, -mu}), WithinRel(-charge_density(3, 1.0, {0.8, mu}), 1e-12));
  }
}

TEST_CASE("charged boundary part matches its Matsubara-sum form", "[thermo]") {
  // (2 pi/3) int d^3p/(2pi)^3 [T sum_k Re 1/((w_k + i mu)^2 + w^2) - 1/(2 w)]
  //   = (pi/3) int d^3p/(2pi)^3 [n(w - mu) + n(w + mu)]/w.
  const double m = 1.0, mu = 0.99, t = 0.5, beta = 1.0 / t;
  bec::AccuracyBudget sum_acc;
  sum_acc.relative_tolerance = 1e-13;
  auto matsubara = [&](double p) {
    const double w = std::hypot(p, m);
    const double sum = bec::quad::sum_bilateral(
        [&](long k) {
          const double wk = 2.0 * kPi * k / beta;
          const double re = wk * wk - mu * mu + w * w;
          const double im = 2.0 * mu * wk;
          return re / (re * re + im * im);
        },
        sum_acc);
    return p * p / (2.0 * kPi * kPi) * (2.0 * kPi / 3.0) * (sum / beta - 0.5 / w);
  };
  bec::AccuracyBudget acc;
  acc.relative_tolerance = 1e-9;
  const double route = bec::quad::integrate(matsubara, 0.0, 40.0, acc).value;
  const double direct = kPi / 3.0 * pair_occupation_over_energy(3, m, {t, mu});
  REQUIRE_THAT(route, WithinRel(direct, 1e-7));
  // Independent QUADPACK evaluation of the same integral.
  REQUIRE_THAT(direct, WithinRel(0.05597570413726649, 1e-9));
}

TEST_CASE("the gap carried by a thermal point overrides m - |mu|", "[thermo]") {
  const double gap = 1e-12;
  const ThermalPoint exact{2.0, 1.0 - gap, gap};
  const double a = pair_occupation_over_energy(3, 1.0, exact);
  const double b = pair_occupation_over_energy(3, 1.0, {2.0, 1.0, 0.0});
  REQUIRE_THAT(a, WithinRel(b, 1e-5));
  REQUIRE(a < b);
}

TEST_CASE("charged integrals at |mu| = m", "[thermo]") {
  REQUIRE(std::isfinite(pair_occupation_over_energy(3, 1.0, {1.0, 1.0})));
  REQUIRE_THROWS_AS(pair_occupation_over_energy(2, 1.0, {1.0, 1.0}), bec::DomainError);
  REQUIRE_THROWS_AS(pair_occupation_over_energy(3, 1.0, {1.0, 1.2}), bec::DomainError);
  REQUIRE_THROWS_AS(mutual_info_neutral(model(1.0, 3), {}, {1.0, 0.1}), bec::DomainError);
}

TEST_CASE("charge density", "[thermo]") {
  REQUIRE(charge_density(3, 1.0, {1.0, 0.0}) == 0.0);
  const double t = 100.0, mu = 0.5;
  REQUIRE_THAT(charge_density(3, 1.0, {t, mu}), WithinRel(mu * t * t / 3.0, 1e-2));
}

TEST_CASE("high-temperature expansion", "[thermo]") {
  REQUIRE_THAT(high_t_expansion({3.0, 0.0}, 0.0), WithinRel(1.5, 1e-15));
  const double c = std::exp(bec::test::kEulerGamma - 1.0) / (4.0 * kPi);
  REQUIRE_THAT(high_t_expansion({20.0, 1.0}, 1.0),
               WithinRel(400.0 / 6.0 - std::log(c / 20.0) / (4.0 * kPi * kPi), 1e-14));
  for (double mu : {0.0, 0.5, 1.0}) {
    const ThermalPoint point{50.0, mu};
    REQUIRE(high_t_expansion_applicable(point, 1.0));
    INFO("mu = " << mu);
    REQUIRE_THAT(high_t_expansion(point, 1.0),
                 WithinRel(pair_occupation_over_energy(3, 1.0, point), 2e-3));
  }
  REQUIRE_FALSE(high_t_expansion_applicable({4.0}, 1.0));
}

TEST_CASE("parameter validation", "[thermo]") {
  REQUIRE_THROWS_AS(model(0.0, 3).validate(), bec::DomainError);
  REQUIRE_THROWS_AS(model(1.0, 4).validate(), bec::DomainError);
  Geometry g;
  g.boundary_area = -1.0;
  REQUIRE_THROWS_AS(g.validate(), bec::DomainError);
}
