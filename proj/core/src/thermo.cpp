#include "bec/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bec/errors.hpp"
#include "bec/quadrature.hpp"

namespace bec::thermo {
namespace {

// omega - mu and omega + mu, with the near-cancelling one rebuilt from the gap.
struct BranchEnergies {
  double particle;      // omega - mu
  double antiparticle;  // omega + mu
};

class ChargedKinematics {
public:
  ChargedKinematics(double mass, const ThermalPoint& point)
      : mass_(mass), mu_(point.chemical_potential), gap_(point.gap(mass)) {}

  BranchEnergies at(double p) const {
    const double omega = dispersion(p, mass_);
    const double kinetic = p * p / (omega + mass_);  // omega - m without cancellation
    if (mu_ >= 0.0) return {kinetic + gap_, omega + mu_};
    return {omega - mu_, kinetic + gap_};
  }

  double gap() const { return gap_; }

private:
  double mass_;
  double mu_;
  double gap_;
};

// Breakpoints at the momentum scales of a thermal integrand.
std::vector<double> thermal_breakpoints(double mass, double temperature, double gap) {
  std::vector<double> points;
  if (gap > 0.0 && gap < mass) points.push_back(std::sqrt(gap * (2.0 * mass + gap)));
  const double nr_thermal = std::sqrt(2.0 * mass * temperature);
  if (nr_thermal < mass) points.push_back(nr_thermal);
  points.push_back(mass);
  if (temperature > mass) points.push_back(temperature);
  std::sort(points.begin(), points.end());
  return points;
}

double entropy_density_of_mode(double energy, double temperature) {
  const double x = energy / temperature;
  if (x > 700.0) return 0.0;
  return x / std::expm1(x) - std::log(-std::expm1(-x));
}

double radial(int dimension, quad::Integrand f, double mass, double temperature, double gap,
              const AccuracyBudget& acc) {
  quad::RadialIntegralSpec spec;
  spec.dimension = dimension;
  spec.integrand = std::move(f);
  spec.singular_points = thermal_breakpoints(mass, temperature, gap);
  spec.acc = acc;
  spec.tail_scale = temperature;
  return quad::integrate_radial(spec);
}

void check_point(const ThermalPoint& point) {
  if (!(point.temperature > 0.0) || !std::isfinite(point.temperature)) {
    throw DomainError("thermal point: temperature must be positive and finite");
  }
  if (std::isnan(point.chemical_potential)) throw DomainError("thermal point: NaN chemical potential");
}

void check_charged_point(int dimension, double mass, const ThermalPoint& point) {
  check_point(point);
  const double gap = point.gap(mass);
  if (gap < 0.0) {
    throw DomainError("charged field: |mu| must not exceed m (|mu| = " +
                      std::to_string(std::abs(point.chemical_potential)) +
                      ", m = " + std::to_string(mass) + ")");
  }
  if (gap == 0.0 && dimension < 3) {
    throw DomainError("charged field: |mu| = m is only integrable for D = 3");
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("model: mass must be positive");
  if (dimension < 1 || dimension > 3) throw DomainError("model: dimension must be 1, 2 or 3");
  if (!(uv_cutoff > mass)) throw DomainError("model: uv_cutoff must exceed the mass");
}

void Geometry::validate() const {
  if (!(boundary_area > 0.0 && subsystem_volume > 0.0 && two_volume > 0.0)) {
    throw DomainError("geometry: boundary_area, subsystem_volume and two_volume must be positive");
  }
}

double ThermalPoint::gap(double mass) const {
  if (mass_gap) return *mass_gap;
  return mass - std::abs(chemical_potential);
}

double dispersion(double p, double m) { return std::hypot(p, m); }

double bose_occupation(double energy, double temperature) {
  const double x = energy / temperature;
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

double occupation_over_energy(int dimension, double mass, double temperature,
                              const AccuracyBudget& acc) {
  check_point(ThermalPoint{temperature, 0.0, std::nullopt});
  auto f = [mass, temperature](double p) {
    const double omega = dispersion(p, mass);
    return bose_occupation(omega, temperature) / omega;
  };
  return radial(dimension, f, mass, temperature, mass, acc);
}

double pair_occupation_over_energy(int dimension, double mass, const ThermalPoint& point,
                                   const AccuracyBudget& acc) {
  check_charged_point(dimension, mass, point);
  const ChargedKinematics kin(mass, point);
  const double t = point.temperature;
  auto f = [&kin, mass, t](double p) {
    const BranchEnergies e = kin.at(p);
    return (bose_occupation(e.particle, t) + bose_occupation(e.antiparticle, t)) /
           dispersion(p, mass);
  };
  return radial(dimension, f, mass, t, kin.gap(), acc);
}

double charge_density(int dimension, double mass, const ThermalPoint& point,
                      const AccuracyBudget& acc) {
  check_charged_point(dimension, mass, point);
  if (point.chemical_potential == 0.0) return 0.0;
  const ChargedKinematics kin(mass, point);
  const double t = point.temperature;
  auto f = [&kin, t](double p) {
    const BranchEnergies e = kin.at(p);
    return bose_occupation(e.particle, t) - bose_occupation(e.antiparticle, t);
  };
  return radial(dimension, f, mass, t, kin.gap(), acc);
}

double thermal_entropy(const ModelParams& params, const Geometry& geom, const ThermalPoint& point,
                       const AccuracyBudget& acc) {
  params.validate();
  geom.validate();
  const double t = point.temperature;
  const double m = params.mass;
  if (params.field_kind == FieldKind::NeutralReal) {
    check_point(point);
    if (point.chemical_potential != 0.0) {
      throw DomainError("thermal_entropy: a neutral field has no chemical potential");
    }
    auto f = [m, t](double p) { return entropy_density_of_mode(dispersion(p, m), t); };
    return geom.subsystem_volume * radial(params.dimension, f, m, t, m, acc);
  }
  check_charged_point(params.dimension, m, point);
  const ChargedKinematics kin(m, point);
  auto f = [&kin, t](double p) {
    const BranchEnergies e = kin.at(p);
    return entropy_density_of_mode(e.particle, t) + entropy_density_of_mode(e.antiparticle, t);
  };
  return geom.subsystem_volume * radial(params.dimension, f, m, t, kin.gap(), acc);
}

double zero_t_entanglement(const ModelParams& params, const Geometry& geom) {
  params.validate();
  geom.validate();
  const int d = params.dimension;
  const double m = params.mass;
  const double a = -0.5 * (d - 1);
  const double ratio = m / params.uv_cutoff;
  const double value = geom.boundary_area / 12.0 * std::pow(4.0 * kPi, a) * std::pow(m, d - 1) *
                       specfun::gamma_upper(a, ratio * ratio);
  return params.field_kind == FieldKind::ChargedComplex ? 2.0 * value : value;
}

EntropyReport mutual_info_neutral(const ModelParams& params, const Geometry& geom,
                                  const ThermalPoint& point, const AccuracyBudget& acc) {
  params.validate();
  geom.validate();
  if (point.chemical_potential != 0.0) {
    throw DomainError("mutual_info_neutral: chemical potential must be zero");
  }
  ModelParams neutral = params;
  neutral.field_kind = FieldKind::NeutralReal;
  EntropyReport r;
  r.zero_t_part = zero_t_entanglement(neutral, geom);
  r.boundary_thermal_part = kPi / 3.0 * geom.boundary_area *
                            occupation_over_energy(params.dimension, params.mass,
                                                   point.temperature, acc);
  r.thermal_entropy = thermal_entropy(neutral, geom, point, acc);
  r.extensive_thermal_part = -0.5 * r.thermal_entropy;
  r.mutual_information = r.zero_t_part + r.boundary_thermal_part;
  r.geometric_entropy = r.mutual_information + r.extensive_thermal_part;
  return r;
}

EntropyReport mutual_info_charged(const ModelParams& params, const Geometry& geom,
                                  const ThermalPoint& point, const AccuracyBudget& acc) {
  params.validate();
  geom.validate();
  ModelParams charged = params;
  charged.field_kind = FieldKind::ChargedComplex;
  EntropyReport r;
  r.zero_t_part = zero_t_entanglement(charged, geom);
  r.boundary_thermal_part = kPi / 3.0 * geom.boundary_area *
                            pair_occupation_over_energy(params.dimension, params.mass, point, acc);
  r.thermal_entropy = thermal_entropy(charged, geom, point, acc);
  r.extensive_thermal_part = -0.5 * r.thermal_entropy;
  r.mutual_information = r.zero_t_part + r.boundary_thermal_part;
  r.geometric_entropy = r.mutual_information + r.extensive_thermal_part;
  return r;
}

EntropyReport mutual_info(const ModelParams& params, const Geometry& geom,
                          const ThermalPoint& point, const AccuracyBudget& acc) {
  if (params.field_kind == FieldKind::NeutralReal) return mutual_info_neutral(params, geom, point, acc);
  return mutual_info_charged(params, geom, point, acc);
}

double high_t_expansion(const ThermalPoint& point, double mass) {
  check_point(point);
  const double gap = point.gap(mass);
  if (gap < 0.0) throw DomainError("high_t_expansion: |mu| must not exceed m");
  const double t = point.temperature;
  const double mu = std::abs(point.chemical_potential);
  // m^2 - mu^2 = gap (m + |mu|)
  const double split = gap * (mass + mu);
  const double c = std::exp(kEulerGamma - 1.0) / (4.0 * kPi);
  double value = t * t / 6.0 - t / (2.0 * kPi) * std::sqrt(split) + split / (4.0 * kPi * kPi);
  if (mass > 0.0) value -= mass * mass / (4.0 * kPi * kPi) * std::log(c * mass / t);
  return value;
}

bool high_t_expansion_applicable(const ThermalPoint& point, double mass) {
  return point.temperature >= 5.0 * mass;
}

}  // namespace bec::thermo
