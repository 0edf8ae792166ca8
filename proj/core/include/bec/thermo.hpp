#pragma once

// Entropies of a free scalar field at temperature T (natural units,
// hbar = c = k_B = 1; entropies in nats).
//
// The geometric entropy of a half-space splits into
//   S_g = S_g(T=0) + (boundary thermal part) + (extensive thermal part),
// and the mutual information keeps the first two. Boundary terms scale with
// the boundary area V_{D-1}, the extensive term with the subsystem volume V_D.

#include <optional>

#include "bec/specfun.hpp"

namespace bec::thermo {

enum class FieldKind { NeutralReal, ChargedComplex };

struct ModelParams {
  double mass = 1.0;
  int dimension = 3;
  double uv_cutoff = 1e4;
  FieldKind field_kind = FieldKind::NeutralReal;

  /// m > 0, cutoff > m, dimension in {1, 2, 3}.
  void validate() const;
};

struct Geometry {
  double boundary_area = 1.0;     // V_{D-1}
  double subsystem_volume = 1.0;  // V_D
  double two_volume = 1.0;        // V_2, the D = 3 transverse area

  void validate() const;
};

struct ThermalPoint {
  double temperature = 1.0;
  double chemical_potential = 0.0;
  /// m - |mu| when it is known more precisely than the subtraction; used by
  /// the condensate solver, where |mu| sits within rounding of m.
  std::optional<double> mass_gap;

  double beta() const { return 1.0 / temperature; }
  /// m - |mu|, preferring the carried value.
  double gap(double mass) const;
};

struct EntropyReport {
  double zero_t_part = 0.0;
  double boundary_thermal_part = 0.0;
  /// Volume term of S_g: -S_thermal / 2 with S_thermal the (positive) thermal entropy.
  double extensive_thermal_part = 0.0;
  double geometric_entropy = 0.0;
  double mutual_information = 0.0;
  double thermal_entropy = 0.0;
};

/// omega(p) = sqrt(p^2 + m^2).
double dispersion(double p, double m);

/// Bose occupation 1 / (e^{x/T} - 1) for x > 0.
double bose_occupation(double energy, double temperature);

/// Standard thermal entropy V_D int d^Dp/(2pi)^D [b n - ln(1 - e^{-b})], b = (omega -+ mu)/T,
/// summed over particle and antiparticle for the charged field.
double thermal_entropy(const ModelParams& params, const Geometry& geom, const ThermalPoint& point,
                       const AccuracyBudget& acc = {});

/// Cutoff-regularized ground-state entanglement entropy of the half-space,
/// (1/12) V_{D-1} m^{D-1} Gamma(-(D-1)/2, m^2/Lambda^2) / (4 pi)^{(D-1)/2}; doubled
/// for the charged field.
double zero_t_entanglement(const ModelParams& params, const Geometry& geom);

/// Boundary integral int d^Dp/(2pi)^D n(omega)/omega for the neutral field.
double occupation_over_energy(int dimension, double mass, double temperature,
                              const AccuracyBudget& acc = {});

/// int d^Dp/(2pi)^D (1/omega) [n(omega - mu) + n(omega + mu)]. Finite at |mu| = m
/// only for D = 3; lower dimensions raise DomainError there.
double pair_occupation_over_energy(int dimension, double mass, const ThermalPoint& point,
                                   const AccuracyBudget& acc = {});

/// Net charge density int d^Dp/(2pi)^D [n(omega - mu) - n(omega + mu)].
double charge_density(int dimension, double mass, const ThermalPoint& point,
                      const AccuracyBudget& acc = {});

EntropyReport mutual_info_neutral(const ModelParams& params, const Geometry& geom,
                                  const ThermalPoint& point, const AccuracyBudget& acc = {});

/// Charged field at chemical potential mu, |mu| <= m. The boundary thermal part is
/// (pi/3) V_{D-1} int d^Dp/(2pi)^D (1/omega)[n(omega-mu) + n(omega+mu)], which together
/// with the zero-T part reproduces the (pi/6)[coth((omega-mu)b/2) + coth((omega+mu)b/2)]
/// form term by term.
EntropyReport mutual_info_charged(const ModelParams& params, const Geometry& geom,
                                  const ThermalPoint& point, const AccuracyBudget& acc = {});

/// Dispatches on params.field_kind.
EntropyReport mutual_info(const ModelParams& params, const Geometry& geom,
                          const ThermalPoint& point, const AccuracyBudget& acc = {});

/// High-temperature expansion of the D = 3 pair_occupation_over_energy,
///   T^2/6 - (T/2pi) sqrt(m^2 - mu^2) - (m^2/4pi^2) ln(C m/T) + (m^2 - mu^2)/4pi^2,
/// C = e^{gamma_E - 1}/(4 pi). Dropped terms are O(m^2/T^2) relative.
double high_t_expansion(const ThermalPoint& point, double mass);

/// True when T >= 5 m, where high_t_expansion is meant to be used.
bool high_t_expansion_applicable(const ThermalPoint& point, double mass);

}  // namespace bec::thermo
