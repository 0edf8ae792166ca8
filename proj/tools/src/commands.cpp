#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include "bec/condensate.hpp"
#include "bec/errors.hpp"
#include "bec/oracles.hpp"
#include "bec/thermo.hpp"
#include "format.hpp"

#ifndef BEC_VERSION
#define BEC_VERSION "unknown"
#endif

namespace bec::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kUnits = "natural units (hbar = c = k_B = 1); entropies in nats";

// Evaluates fn(i) for every row; rows land in index order whatever the schedule.
void parallel_rows(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::string error_text(const std::exception& e) {
  std::string what = e.what();
  return what.empty() ? "error" : "error: " + what;
}

void add_config_meta(Table& table, const RunConfig& config, const char* command) {
  table.meta.emplace_back("generator", std::string("bec ") + BEC_VERSION);
  table.meta.emplace_back("command", std::string(command));
  table.meta.emplace_back("units", std::string(kUnits));
  for (const auto& [key, value] : config.entries()) table.meta.emplace_back(key, value);
}

void write_table(const Table& table, const RunConfig& config, std::ostream& out) {
  if (config.format == Format::Json) {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  std::set<std::string> seen;
  for (const auto& w : warnings) {
    if (seen.insert(w).second) err << "warning: " << w << '\n';
  }
}

const condensate::ChargeSpec& require_charge(const RunConfig& config, const char* command) {
  if (!config.charge) {
    throw ConfigError(std::string(command) + " requires a charge density (--charge-density)");
  }
  return *config.charge;
}

struct Row {
  double mu = kNaN, rho_e = kNaN, rho_0 = kNaN;
  thermo::EntropyReport entropy;
  std::string phase = "-";
  std::string status = "ok";
  std::vector<std::string> warnings;
};

// Entropy decomposition over the grid, at fixed charge or at fixed mu.
std::vector<Row> evaluate_grid(const RunConfig& config, const std::vector<double>& grid) {
  std::vector<Row> rows(grid.size());
  if (config.charge) {
    const condensate::SweepTable sweep = condensate::sweep(*config.charge, config.model,
                                                           config.geometry, grid, config.acc,
                                                           config.threads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& src = sweep.rows[i];
      Row& row = rows[i];
      if (!src.ok()) {
        row.status = "error: " + src.error;
        row.entropy = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
        continue;
      }
      const auto& s = src.report.state;
      row.mu = s.mu;
      row.rho_e = s.excited_density;
      row.rho_0 = s.condensate_density;
      row.entropy = src.report.entropy;
      row.phase = condensate::to_string(s.phase);
      row.warnings = s.warnings;
    }
    return rows;
  }
  parallel_rows(grid.size(), config.threads, [&](std::size_t i) {
    Row& row = rows[i];
    const thermo::ThermalPoint point{grid[i], config.mu, std::nullopt};
    try {
      row.entropy = thermo::mutual_info(config.model, config.geometry, point, config.acc);
      row.mu = config.mu;
      row.rho_e = config.model.field_kind == thermo::FieldKind::ChargedComplex
                      ? thermo::charge_density(config.model.dimension, config.model.mass, point,
                                               config.acc)
                      : 0.0;
      row.rho_0 = 0.0;
    } catch (const std::exception& e) {
      row.status = error_text(e);
      row.entropy = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    }
  });
  return rows;
}

std::optional<double> grid_critical_temperature(const RunConfig& config) {
  if (!config.charge) return std::nullopt;
  return condensate::critical_temperature(*config.charge, config.model.mass, config.acc);
}

int finish_rows(const std::vector<Row>& rows, std::ostream& err) {
  std::vector<std::string> warnings;
  bool failed = false;
  for (const auto& r : rows) {
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    failed = failed || r.status != "ok";
  }
  report_warnings(warnings, err);
  if (failed) {
    err << "error: some rows failed; see the status column\n";
    return kNumericFailure;
  }
  return kOk;
}

void add_charge_meta(Table& table, const RunConfig& config, std::optional<double> tc) {
  if (!config.charge || !tc) return;
  table.meta.emplace_back("regime", condensate::to_string(config.charge->resolve(config.model.mass)));
  table.meta.emplace_back("critical_temperature", *tc);
}

}  // namespace

int cmd_mutual_info(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::optional<double> tc = grid_critical_temperature(config);
  const std::vector<double> grid = temperature_grid(config.grid, tc);
  const std::vector<Row> rows = evaluate_grid(config, grid);

  Table table;
  add_config_meta(table, config, "mutual-info");
  add_charge_meta(table, config, tc);
  table.columns = {"T", "mu", "rho_e", "rho_0", "I_m", "I_m_thermal_part", "S_g", "S_thermal",
                   "phase", "status"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    table.rows.push_back({grid[i], r.mu, r.rho_e, r.rho_0, r.entropy.mutual_information,
                          r.entropy.boundary_thermal_part, r.entropy.geometric_entropy,
                          r.entropy.thermal_entropy, r.phase, r.status});
  }
  write_table(table, config, out);
  return finish_rows(rows, err);
}

int cmd_entropy(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::optional<double> tc = grid_critical_temperature(config);
  const std::vector<double> grid = temperature_grid(config.grid, tc);
  const std::vector<Row> rows = evaluate_grid(config, grid);

  Table table;
  add_config_meta(table, config, "entropy");
  add_charge_meta(table, config, tc);
  table.columns = {"T", "mu", "S_g_zero_t", "S_g_boundary_thermal", "S_g_extensive_thermal", "S_g",
                   "S_thermal", "I_m", "status"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const auto& e = r.entropy;
    table.rows.push_back({grid[i], r.mu, e.zero_t_part, e.boundary_thermal_part,
                          e.extensive_thermal_part, e.geometric_entropy, e.thermal_entropy,
                          e.mutual_information, r.status});
  }
  write_table(table, config, out);
  return finish_rows(rows, err);
}

int cmd_mu_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const condensate::ChargeSpec& charge = require_charge(config, "mu-solve");
  const double m = config.model.mass;
  const double tc = condensate::critical_temperature(charge, m, config.acc);
  const std::vector<double> grid = temperature_grid(config.grid, tc);

  std::vector<condensate::CondensateState> states(grid.size());
  std::vector<std::string> status(grid.size(), "ok");
  parallel_rows(grid.size(), config.threads, [&](std::size_t i) {
    try {
      states[i] = condensate::solve_chemical_potential(grid[i], charge, m, config.acc);
    } catch (const std::exception& e) {
      status[i] = error_text(e);
    }
  });

  Table table;
  add_config_meta(table, config, "mu-solve");
  add_charge_meta(table, config, tc);
  table.columns = {"T", "mu", "mu_nr", "fugacity", "rho_e", "rho_0", "phase", "status"};
  std::vector<Row> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows[i].status = status[i];
    if (status[i] != "ok") {
      table.rows.push_back({grid[i], kNaN, kNaN, kNaN, kNaN, kNaN, std::string("-"), status[i]});
      continue;
    }
    const auto& s = states[i];
    rows[i].warnings = s.warnings;
    table.rows.push_back({grid[i], s.mu, s.mu_nr, s.fugacity, s.excited_density,
                          s.condensate_density, std::string(condensate::to_string(s.phase)),
                          status[i]});
  }
  write_table(table, config, out);
  return finish_rows(rows, err);
}

int cmd_tc(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const condensate::ChargeSpec& charge = require_charge(config, "tc");
  const double m = config.model.mass;
  const condensate::Regime regime = charge.resolve(m);
  Table table;
  add_config_meta(table, config, "tc");
  table.columns = {"regime", "T_C", "T_C_ur_leading", "T_C_alt_convention"};
  table.rows.push_back({std::string(condensate::to_string(regime)),
                        condensate::critical_temperature(charge, m, config.acc),
                        condensate::critical_temperature_ur_leading(charge, m),
                        condensate::critical_temperature_alt_convention(charge, m)});
  write_table(table, config, out);
  return kOk;
}

int cmd_discontinuity(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const condensate::ChargeSpec& charge = require_charge(config, "discontinuity");
  // One-sided differences at T_C need the integrals well below the step-size noise.
  AccuracyBudget acc = config.acc;
  acc.relative_tolerance = std::min(acc.relative_tolerance, 1e-12);
  const condensate::DiscontinuityResult r =
      condensate::discontinuity_estimate(charge, config.model, config.geometry, {}, acc);

  JsonObject json(out);
  json.field("generator", std::string("bec ") + BEC_VERSION)
      .field("units", kUnits)
      .field("regime", condensate::to_string(r.regime))
      .field("charge_density", charge.density)
      .field("mass", config.model.mass)
      .field("v2", config.geometry.two_volume)
      .field("quadrature_rtol", acc.relative_tolerance)
      .field("critical_temperature", r.critical_temperature)
      .field("left_derivative", r.left_derivative)
      .field("right_derivative", r.right_derivative)
      .field("jump", r.jump)
      .field("analytic_jump", r.analytic_jump)
      .field("alt_convention_jump", r.alt_convention_jump)
      .field("closed_form_jump", r.closed_form_jump)
      .field("relative_deviation", r.relative_deviation)
      .field("magnitude_deviation",
             std::abs(std::abs(r.jump) - std::abs(r.analytic_jump)) / std::abs(r.analytic_jump))
      .field("sign_agrees", r.jump * r.analytic_jump > 0.0)
      .field("left_converged", r.left.converged)
      .field("right_converged", r.right.converged)
      .field("left_steps", r.left.steps)
      .field("left_estimates", r.left.extrapolated)
      .field("right_steps", r.right.steps)
      .field("right_estimates", r.right.extrapolated)
      .field("warnings", r.warnings);
  json.close();
  out << '\n';
  report_warnings(r.warnings, err);
  return r.left.converged && r.right.converged ? kOk : kNumericFailure;
}

int cmd_verify(const std::vector<std::string>& only, unsigned threads, std::ostream& out,
               std::ostream& err) {
  const auto& known = oracles::family_names();
  for (const auto& name : only) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("unknown oracle family '" + name + "' (known: " + list + ")");
    }
  }
  const std::vector<oracles::OracleReport> reports = oracles::run_suite(only, threads);
  for (const auto& r : reports) {
    out << "{\"identity\": \"" << json_escape(r.identity_name) << "\", \"family\": \""
        << json_escape(r.family) << "\", \"parameters\": {";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
      out << (i ? ", " : "") << '"' << json_escape(r.parameters[i].first)
          << "\": " << json_value(Cell{r.parameters[i].second});
    }
    out << "}, \"lhs\": " << json_value(Cell{r.lhs}) << ", \"rhs\": " << json_value(Cell{r.rhs})
        << ", \"relative_error\": " << json_value(Cell{r.relative_error})
        << ", \"tolerance\": " << json_value(Cell{r.tolerance})
        << ", \"passed\": " << (r.passed ? "true" : "false")
        << ", \"informational\": " << (r.informational ? "true" : "false")
        << ", \"note\": \"" << json_escape(r.note) << "\"}\n";
  }
  const bool ok = oracles::all_passed(reports);
  if (!ok) err << "verification failed\n";
  return ok ? kOk : kVerificationFailed;
}

}  // namespace bec::cli
