#include "bec/condensate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "bec/errors.hpp"
#include "bec/quadrature.hpp"

namespace bec::condensate {
namespace {

constexpr double kNrLimit = 0.1;
constexpr double kRelLimit = 10.0;

double quantum_density(double temperature, double mass) {
  return std::pow(mass * temperature / (2.0 * kPi), 1.5);
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite");
  }
}

void check_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive and finite");
}

void add_regime_warnings(CondensateState& state, const ChargeSpec& charge, double mass) {
  const double ratio = std::abs(charge.density) / (mass * mass * mass);
  if (state.regime == Regime::NonRelativistic && ratio > kNrLimit) {
    state.warnings.push_back("non-relativistic regime used with |rho|/m^3 = " +
                             std::to_string(ratio) + " > 0.1");
  }
  if (state.regime == Regime::Relativistic && ratio < kRelLimit) {
    state.warnings.push_back("relativistic regime used with |rho|/m^3 = " + std::to_string(ratio) +
                             " < 10; the condensation temperature is not ultra-relativistic");
  }
}

CondensateState solve_nr(double temperature, const ChargeSpec& charge, double mass,
                         const AccuracyBudget& acc) {
  CondensateState s;
  s.temperature = temperature;
  s.regime = Regime::NonRelativistic;
  const double rho = std::abs(charge.density);
  const double nq = quantum_density(temperature, mass);
  const double capacity = nq * specfun::zeta(1.5);
  if (capacity <= rho) {
    s.phase = Phase::Condensed;
    s.fugacity = 1.0;
    s.excited_density = capacity;
    s.condensate_density = rho - capacity;
  } else {
    // u = mu_nr / T; Li_{3/2}(e^u) >= e^u keeps the lower end below the root.
    const double target = rho / nq;
    const double lo = std::min(-50.0, std::log(target) - 1.0);
    auto f = [&](double u) { return specfun::polylog(1.5, std::exp(u), acc) - target; };
    const double u = quad::solve_bracketed(f, lo, 0.0, 1e-15, 1e-15).root;
    s.mu_nr = u * temperature;
    s.mass_gap = -s.mu_nr;
    s.fugacity = std::exp(u);
    s.excited_density = nq * specfun::polylog(1.5, s.fugacity, acc);
  }
  s.mu = sign_of(charge.density) * (mass - s.mass_gap);
  return s;
}

CondensateState solve_rel(double temperature, const ChargeSpec& charge, double mass,
                          const AccuracyBudget& acc) {
  CondensateState s;
  s.temperature = temperature;
  s.regime = Regime::Relativistic;
  const double sign = sign_of(charge.density);
  const double rho = std::abs(charge.density);
  const double capacity =
      std::abs(thermo::charge_density(3, mass, {temperature, sign * mass, 0.0}, acc));
  if (capacity <= rho) {
    s.phase = Phase::Condensed;
    s.mu = sign * mass;
    s.fugacity = 1.0;
    s.excited_density = capacity;
    s.condensate_density = rho - capacity;
    return s;
  }
  // x = sqrt(m^2 - mu^2) in [0, m]; the gap m - |mu| = x^2/(m + |mu|) stays exact near x = 0.
  auto point_at = [&](double x) {
    const double abs_mu = std::sqrt(std::max(0.0, mass * mass - x * x));
    return thermo::ThermalPoint{temperature, sign * abs_mu, x * x / (mass + abs_mu)};
  };
  auto f = [&](double x) {
    if (x == 0.0) return capacity - rho;
    return std::abs(thermo::charge_density(3, mass, point_at(x), acc)) - rho;
  };
  const double x = quad::solve_bracketed(f, 0.0, mass, 1e-14, 1e-15 * mass).root;
  const thermo::ThermalPoint p = point_at(x);
  s.mu = p.chemical_potential;
  s.mass_gap = *p.mass_gap;
  s.mu_nr = -s.mass_gap;
  s.fugacity = std::exp(s.mu_nr / temperature);
  s.excited_density = rho;
  return s;
}

thermo::Geometry transverse_geometry(const thermo::Geometry& geom) {
  thermo::Geometry g = geom;
  g.boundary_area = geom.two_volume;
  return g;
}

double boundary_thermal(const CondensateState& state, double mass, const thermo::Geometry& geom,
                        const AccuracyBudget& acc) {
  if (state.regime == Regime::NonRelativistic) {
    return kPi / 6.0 * geom.two_volume / mass * state.excited_density;
  }
  return kPi / 6.0 * geom.two_volume *
         thermo::pair_occupation_over_energy(3, mass, state.point(), acc);
}

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::NonRelativistic: return "nr";
    case Regime::Relativistic: return "rel";
    case Regime::Auto: return "auto";
  }
  return "?";
}

const char* to_string(Phase phase) { return phase == Phase::Condensed ? "condensed" : "normal"; }

void ChargeSpec::validate() const {
  if (!std::isfinite(density) || density == 0.0) {
    throw DomainError("charge density must be finite and nonzero");
  }
}

Regime ChargeSpec::resolve(double mass) const {
  validate();
  check_mass(mass);
  if (regime != Regime::Auto) return regime;
  const double ratio = std::abs(density) / (mass * mass * mass);
  if (ratio < kNrLimit) return Regime::NonRelativistic;
  if (ratio > kRelLimit) return Regime::Relativistic;
  throw DomainError("|rho|/m^3 = " + std::to_string(ratio) +
                    " lies between the non-relativistic and relativistic limits; "
                    "choose a regime explicitly");
}

double excited_density_nr(double temperature, double mu_nr, double mass) {
  check_temperature(temperature);
  check_mass(mass);
  if (mu_nr > 0.0) throw DomainError("excited_density_nr: mu_nr must be <= 0");
  return quantum_density(temperature, mass) * specfun::polylog(1.5, std::exp(mu_nr / temperature));
}

double entropy_density_nr(double temperature, double mu_nr, double mass) {
  check_temperature(temperature);
  check_mass(mass);
  if (mu_nr > 0.0) throw DomainError("entropy_density_nr: mu_nr must be <= 0");
  const double log_z = mu_nr / temperature;
  const double z = std::exp(log_z);
  return quantum_density(temperature, mass) *
         (2.5 * specfun::polylog(2.5, z) - log_z * specfun::polylog(1.5, z));
}

double charge_density_rel(const thermo::ThermalPoint& point, double mass,
                          const AccuracyBudget& acc) {
  return thermo::charge_density(3, mass, point, acc);
}

CondensateState solve_chemical_potential(double temperature, const ChargeSpec& charge, double mass,
                                         const AccuracyBudget& acc) {
  check_temperature(temperature);
  acc.validate();
  const Regime regime = charge.resolve(mass);
  CondensateState s = regime == Regime::NonRelativistic ? solve_nr(temperature, charge, mass, acc)
                                                        : solve_rel(temperature, charge, mass, acc);
  add_regime_warnings(s, charge, mass);
  return s;
}

double critical_temperature(const ChargeSpec& charge, double mass, const AccuracyBudget& acc) {
  const Regime regime = charge.resolve(mass);
  const double rho = std::abs(charge.density);
  if (regime == Regime::NonRelativistic) {
    return 2.0 * kPi / mass * std::pow(rho / specfun::zeta(1.5), 2.0 / 3.0);
  }
  const double sign = sign_of(charge.density);
  auto f = [&](double t) {
    return std::abs(thermo::charge_density(3, mass, {t, sign * mass, 0.0}, acc)) - rho;
  };
  // The capacity grows monotonically with T; widen around the leading estimate.
  double lo = 0.5 * critical_temperature_ur_leading(charge, mass);
  double hi = 2.0 * lo;
  lo = std::min(lo, 2.0 * kPi / mass * std::pow(rho / specfun::zeta(1.5), 2.0 / 3.0));
  for (int i = 0; i < 60 && f(lo) > 0.0; ++i) lo *= 0.5;
  for (int i = 0; i < 60 && f(hi) < 0.0; ++i) hi *= 2.0;
  return quad::solve_bracketed(f, lo, hi, 1e-15, 0.0).root;
}

double critical_temperature_ur_leading(const ChargeSpec& charge, double mass) {
  charge.validate();
  check_mass(mass);
  return std::sqrt(3.0 * std::abs(charge.density) / mass);
}

double critical_temperature_alt_convention(const ChargeSpec& charge, double mass) {
  charge.validate();
  check_mass(mass);
  return std::pow(std::abs(charge.density) / specfun::zeta(1.5), 2.0 / 3.0) / (2.0 * kPi * mass);
}

FixedChargeReport mutual_info_at_fixed_charge(double temperature, const ChargeSpec& charge,
                                              const thermo::ModelParams& params,
                                              const thermo::Geometry& geom,
                                              const AccuracyBudget& acc) {
  params.validate();
  geom.validate();
  if (params.dimension != 3) throw DomainError("fixed-charge entropy requires D = 3");
  FixedChargeReport r;
  r.state = solve_chemical_potential(temperature, charge, params.mass, acc);

  thermo::ModelParams charged = params;
  charged.field_kind = thermo::FieldKind::ChargedComplex;
  thermo::EntropyReport& e = r.entropy;
  e.zero_t_part = thermo::zero_t_entanglement(charged, transverse_geometry(geom));
  e.boundary_thermal_part = boundary_thermal(r.state, params.mass, geom, acc);
  if (r.state.regime == Regime::NonRelativistic) {
    e.thermal_entropy =
        geom.subsystem_volume * entropy_density_nr(temperature, r.state.mu_nr, params.mass);
  } else {
    e.thermal_entropy = thermo::thermal_entropy(charged, geom, r.state.point(), acc);
  }
  e.extensive_thermal_part = -0.5 * e.thermal_entropy;
  e.mutual_information = e.zero_t_part + e.boundary_thermal_part;
  e.geometric_entropy = e.mutual_information + e.extensive_thermal_part;
  return r;
}

SweepTable sweep(const ChargeSpec& charge, const thermo::ModelParams& params,
                 const thermo::Geometry& geom, const std::vector<double>& temperatures,
                 const AccuracyBudget& acc, unsigned threads) {
  params.validate();
  geom.validate();
  acc.validate();
  SweepTable table;
  table.regime = charge.resolve(params.mass);
  table.critical_temperature = critical_temperature(charge, params.mass, acc);
  table.rows.resize(temperatures.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < temperatures.size(); i = next++) {
      SweepRow& row = table.rows[i];
      row.report.state.temperature = temperatures[i];
      try {
        row.report = mutual_info_at_fixed_charge(temperatures[i], charge, params, geom, acc);
      } catch (const std::exception& ex) {
        row.error = ex.what();
        if (row.error.empty()) row.error = "unknown failure";
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, temperatures.size()));
  if (threads <= 1) {
    worker();
    return table;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return table;
}

DiscontinuityResult discontinuity_estimate(const ChargeSpec& charge,
                                           const thermo::ModelParams& params,
                                           const thermo::Geometry& geom,
                                           const DiscontinuityOptions& options,
                                           const AccuracyBudget& acc) {
  params.validate();
  geom.validate();
  acc.validate();
  if (params.dimension != 3) throw DomainError("discontinuity requires D = 3");
  const double m = params.mass;

  DiscontinuityResult out;
  out.regime = charge.resolve(m);
  out.critical_temperature = critical_temperature(charge, m, acc);
  const double tc = out.critical_temperature;
  const double rho = std::abs(charge.density);

  std::map<double, double> cache;
  auto thermal = [&](double t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const CondensateState s = solve_chemical_potential(t, charge, m, acc);
    const double v = boundary_thermal(s, m, geom, acc);
    cache.emplace(t, v);
    return v;
  };

  numdiff::OneSidedOptions opt;
  opt.initial_step = options.initial_step_fraction * tc;
  opt.min_halvings = options.min_halvings;
  opt.max_halvings = options.max_halvings;
  opt.agreement = options.agreement;
  opt.absolute_floor = thermal(tc) / tc;

  out.left = numdiff::one_sided_derivative(thermal, tc, numdiff::Side::Left, opt);
  out.right = numdiff::one_sided_derivative(thermal, tc, numdiff::Side::Right, opt);
  out.left_derivative = out.left.value;
  out.right_derivative = out.right.value;
  out.jump = out.left_derivative - out.right_derivative;

  if (out.regime == Regime::NonRelativistic) {
    out.analytic_jump = kPi / 4.0 * geom.two_volume / m * rho / tc;
    out.alt_convention_jump = kPi / 4.0 * geom.two_volume / m * rho /
                              critical_temperature_alt_convention(charge, m);
    out.closed_form_jump = kPi * kPi / 2.0 * std::pow(specfun::zeta(1.5), 2.0 / 3.0) *
                           geom.two_volume * std::cbrt(rho);
  } else {
    out.analytic_jump = -kPi * std::sqrt(3.0) / 9.0 * geom.two_volume * std::sqrt(rho / m);
    out.alt_convention_jump = out.analytic_jump;
    out.closed_form_jump = out.analytic_jump;
  }
  out.relative_deviation = std::abs(out.jump - out.analytic_jump) / std::abs(out.analytic_jump);

  if (!out.left.converged) out.warnings.push_back("left derivative did not converge");
  if (!out.right.converged) out.warnings.push_back("right derivative did not converge");
  if (out.jump * out.analytic_jump < 0.0) {
    out.warnings.push_back("numerical jump has the opposite sign to the analytic value");
  }
  return out;
}

}  // namespace bec::condensate
