#pragma once

// Charged scalar at fixed net charge density in D = 3: chemical potential,
// Bose-Einstein condensation and the mutual information across T_C.
//
// Below T_C the chemical potential is pinned at |mu| = m (mu_NR = 0) and the
// excess charge sits in the condensate, which carries no boundary entropy.

#include <string>
#include <vector>

#include "bec/derivative.hpp"
#include "bec/specfun.hpp"
#include "bec/thermo.hpp"

namespace bec::condensate {

enum class Regime { NonRelativistic, Relativistic, Auto };
enum class Phase { Normal, Condensed };

const char* to_string(Regime regime);
const char* to_string(Phase phase);

struct ChargeSpec {
  /// Net charge density; the sign selects particles (> 0) or antiparticles (< 0).
  double density = 1.0;
  Regime regime = Regime::Auto;

  void validate() const;
  /// Auto picks NonRelativistic for |rho|/m^3 < 0.1, Relativistic above 10,
  /// and raises DomainError in between.
  Regime resolve(double mass) const;
};

struct CondensateState {
  double temperature = 0.0;
  double mu = 0.0;        // signed relativistic chemical potential
  double mass_gap = 0.0;  // m - |mu| >= 0
  double mu_nr = 0.0;     // -mass_gap, the non-relativistic chemical potential
  double fugacity = 0.0;  // exp(mu_nr / T)
  double excited_density = 0.0;
  double condensate_density = 0.0;
  Phase phase = Phase::Normal;
  Regime regime = Regime::NonRelativistic;
  std::vector<std::string> warnings;

  thermo::ThermalPoint point() const { return {temperature, mu, mass_gap}; }
};

/// (mT/2pi)^{3/2} Li_{3/2}(e^{mu_nr/T}), mu_nr <= 0.
double excited_density_nr(double temperature, double mu_nr, double mass);

/// (mT/2pi)^{3/2} ((5/2) Li_{5/2}(z) - ln z Li_{3/2}(z)): non-relativistic entropy density.
double entropy_density_nr(double temperature, double mu_nr, double mass);

/// Net relativistic charge density of particles minus antiparticles.
double charge_density_rel(const thermo::ThermalPoint& point, double mass,
                          const AccuracyBudget& acc = {});

/// Chemical potential fixing the charge at temperature T. Condensed states carry
/// the remainder |rho| - rho_e in condensate_density.
CondensateState solve_chemical_potential(double temperature, const ChargeSpec& charge, double mass,
                                         const AccuracyBudget& acc = {});

/// NR: (2pi/m)(|rho|/zeta(3/2))^{2/3}. Rel: root of charge_density(T, |mu| = m) = |rho|.
double critical_temperature(const ChargeSpec& charge, double mass, const AccuracyBudget& acc = {});

/// sqrt(3|rho|/m), the ultra-relativistic leading term.
double critical_temperature_ur_leading(const ChargeSpec& charge, double mass);

/// (|rho|/zeta(3/2))^{2/3} / (2pi m): the alternative convention in which the
/// NR discontinuity takes the closed form (pi^2/2) zeta(3/2)^{2/3} V2 rho^{1/3}.
double critical_temperature_alt_convention(const ChargeSpec& charge, double mass);

struct FixedChargeReport {
  CondensateState state;
  thermo::EntropyReport entropy;
};

/// Mutual information at fixed charge. Boundary part (pi/6) V2 rho_e / m in the NR
/// regime and (pi/6) V2 int d^3p/(2pi)^3 (1/omega)[n(omega-mu)+n(omega+mu)] in the
/// relativistic one; zero-T part of the complex field. Requires D = 3.
FixedChargeReport mutual_info_at_fixed_charge(double temperature, const ChargeSpec& charge,
                                              const thermo::ModelParams& params,
                                              const thermo::Geometry& geom,
                                              const AccuracyBudget& acc = {});

struct SweepRow {
  FixedChargeReport report;
  /// Empty when the row succeeded.
  std::string error;
  bool ok() const { return error.empty(); }
};

struct SweepTable {
  double critical_temperature = 0.0;
  Regime regime = Regime::NonRelativistic;
  std::vector<SweepRow> rows;  // in grid order
};

/// Evaluates every grid temperature, in parallel when threads != 1
/// (0 = hardware concurrency). Row failures are recorded, not thrown.
SweepTable sweep(const ChargeSpec& charge, const thermo::ModelParams& params,
                 const thermo::Geometry& geom, const std::vector<double>& temperatures,
                 const AccuracyBudget& acc = {}, unsigned threads = 0);

struct DiscontinuityOptions {
  /// First stencil step as a fraction of T_C.
  double initial_step_fraction = 1e-2;
  int min_halvings = 4;
  int max_halvings = 28;
  double agreement = 5e-3;
};

struct DiscontinuityResult {
  double critical_temperature = 0.0;
  Regime regime = Regime::NonRelativistic;
  double left_derivative = 0.0;   // dI/dT at T_C from below
  double right_derivative = 0.0;  // dI/dT at T_C from above
  double jump = 0.0;              // left - right
  /// NR: (pi/4)(V2/m) rho / T_C. Rel: -(pi sqrt3/9) V2 sqrt(|rho|/m).
  double analytic_jump = 0.0;
  /// NR: (pi/4)(V2/m) rho / T_C with T_C in the alternative convention.
  double alt_convention_jump = 0.0;
  /// NR: (pi^2/2) zeta(3/2)^{2/3} V2 rho^{1/3}; Rel: same as analytic_jump.
  double closed_form_jump = 0.0;
  /// |jump - analytic| / |analytic|.
  double relative_deviation = 0.0;
  numdiff::OneSidedDerivative left;
  numdiff::OneSidedDerivative right;
  std::vector<std::string> warnings;
};

/// One-sided derivatives of the mutual information at T_C. Only the thermal
/// boundary part is differentiated; the zero-T part is constant and much larger.
DiscontinuityResult discontinuity_estimate(const ChargeSpec& charge,
                                           const thermo::ModelParams& params,
                                           const thermo::Geometry& geom,
                                           const DiscontinuityOptions& options = {},
                                           const AccuracyBudget& acc = {});

}  // namespace bec::condensate
