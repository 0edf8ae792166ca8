#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bec/errors.hpp"
#include "format.hpp"

namespace bec::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

long to_integer(const std::string& key, const std::string& value) {
  long out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

const char* spacing_name(Spacing s) {
  switch (s) {
    case Spacing::Linear: return "linear";
    case Spacing::Log: return "log";
    case Spacing::TcRefined: return "tc-refined";
  }
  return "?";
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "charge.density", "charge.regime",   "geometry.v2",   "geometry.varea", "geometry.vvol",
      "grid.points",    "grid.spacing",    "grid.tmax",     "grid.tmin",      "model.cutoff",
      "model.dimension", "model.field",    "model.mass",    "model.mu",       "output.format",
      "output.path",    "run.threads",     "tolerances.rtol"};
  return keys;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

RunConfig build_config(const std::map<std::string, std::string>& entries) {
  RunConfig c;
  const auto& keys = known_keys();
  for (const auto& [key, value] : entries) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  auto get = [&entries](const char* key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (auto v = get("model.mass")) c.model.mass = to_double("model.mass", *v);
  if (auto v = get("model.dimension")) c.model.dimension = static_cast<int>(to_integer("model.dimension", *v));
  if (auto v = get("model.cutoff")) c.model.uv_cutoff = to_double("model.cutoff", *v);
  if (auto v = get("model.mu")) c.mu = to_double("model.mu", *v);
  if (auto v = get("model.field")) {
    if (*v == "neutral") c.model.field_kind = thermo::FieldKind::NeutralReal;
    else if (*v == "charged") c.model.field_kind = thermo::FieldKind::ChargedComplex;
    else throw ConfigError("model.field must be neutral or charged");
  }
  if (auto v = get("geometry.varea")) c.geometry.boundary_area = to_double("geometry.varea", *v);
  if (auto v = get("geometry.vvol")) c.geometry.subsystem_volume = to_double("geometry.vvol", *v);
  if (auto v = get("geometry.v2")) c.geometry.two_volume = to_double("geometry.v2", *v);
  if (auto v = get("charge.density")) {
    condensate::ChargeSpec charge;
    charge.density = to_double("charge.density", *v);
    c.charge = charge;
  }
  if (auto v = get("charge.regime")) {
    condensate::Regime regime;
    if (*v == "nr") regime = condensate::Regime::NonRelativistic;
    else if (*v == "rel") regime = condensate::Regime::Relativistic;
    else if (*v == "auto") regime = condensate::Regime::Auto;
    else throw ConfigError("charge.regime must be nr, rel or auto");
    if (!c.charge) throw ConfigError("charge.regime requires charge.density");
    c.charge->regime = regime;
  }
  if (auto v = get("grid.tmin")) c.grid.t_min = to_double("grid.tmin", *v);
  if (auto v = get("grid.tmax")) c.grid.t_max = to_double("grid.tmax", *v);
  if (auto v = get("grid.points")) c.grid.points = static_cast<int>(to_integer("grid.points", *v));
  if (auto v = get("grid.spacing")) {
    if (*v == "linear") c.grid.spacing = Spacing::Linear;
    else if (*v == "log") c.grid.spacing = Spacing::Log;
    else if (*v == "tc-refined") c.grid.spacing = Spacing::TcRefined;
    else throw ConfigError("grid.spacing must be linear, log or tc-refined");
  }
  if (auto v = get("tolerances.rtol")) c.acc.relative_tolerance = to_double("tolerances.rtol", *v);
  if (auto v = get("output.format")) {
    if (*v == "csv") c.format = Format::Csv;
    else if (*v == "json") c.format = Format::Json;
    else throw ConfigError("output.format must be csv or json");
  }
  if (auto v = get("output.path")) c.out_path = *v;
  if (auto v = get("run.threads")) {
    const long t = to_integer("run.threads", *v);
    if (t < 0) throw ConfigError("run.threads must be >= 0");
    c.threads = static_cast<unsigned>(t);
  }

  if (c.charge) c.model.field_kind = thermo::FieldKind::ChargedComplex;
  try {
    c.model.validate();
    c.geometry.validate();
    c.acc.validate();
    if (c.charge) c.charge->validate();
  } catch (const bec::DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(c.grid.t_min > 0.0)) throw ConfigError("grid.tmin must be positive");
  if (c.grid.points < 1) throw ConfigError("grid.points must be at least 1");
  if (c.grid.points > 1 && !(c.grid.t_min < c.grid.t_max)) {
    throw ConfigError("grid.tmin must be below grid.tmax");
  }
  if (c.grid.spacing == Spacing::TcRefined && !c.charge) {
    throw ConfigError("tc-refined spacing requires charge.density");
  }
  if (c.charge && c.model.dimension != 3) throw ConfigError("a charge density requires dimension 3");
  if (c.model.field_kind == thermo::FieldKind::NeutralReal && c.mu != 0.0) {
    throw ConfigError("a neutral field takes no chemical potential");
  }
  if (c.model.field_kind == thermo::FieldKind::ChargedComplex && !c.charge &&
      std::abs(c.mu) > c.model.mass) {
    throw ConfigError("|mu| must not exceed the mass");
  }
  return c;
}

std::map<std::string, std::string> RunConfig::entries() const {
  std::map<std::string, std::string> e;
  e["model.mass"] = format_number(model.mass);
  e["model.dimension"] = std::to_string(model.dimension);
  e["model.cutoff"] = format_number(model.uv_cutoff);
  e["model.field"] = model.field_kind == thermo::FieldKind::NeutralReal ? "neutral" : "charged";
  e["model.mu"] = format_number(mu);
  e["geometry.varea"] = format_number(geometry.boundary_area);
  e["geometry.vvol"] = format_number(geometry.subsystem_volume);
  e["geometry.v2"] = format_number(geometry.two_volume);
  if (charge) {
    e["charge.density"] = format_number(charge->density);
    e["charge.regime"] = condensate::to_string(charge->regime);
  }
  e["grid.tmin"] = format_number(grid.t_min);
  e["grid.tmax"] = format_number(grid.t_max);
  e["grid.points"] = std::to_string(grid.points);
  e["grid.spacing"] = spacing_name(grid.spacing);
  e["tolerances.rtol"] = format_number(acc.relative_tolerance);
  return e;
}

std::vector<double> temperature_grid(const GridSpec& grid, std::optional<double> critical_temperature) {
  const int n = grid.points;
  std::vector<double> t(static_cast<std::size_t>(n));
  if (n == 1) {
    t[0] = grid.spacing == Spacing::TcRefined ? *critical_temperature : grid.t_min;
    return t;
  }
  const double last = n - 1;
  for (int i = 0; i < n; ++i) {
    const double f = i / last;
    switch (grid.spacing) {
      case Spacing::Linear:
        t[i] = grid.t_min + f * (grid.t_max - grid.t_min);
        break;
      case Spacing::Log:
        t[i] = grid.t_min * std::pow(grid.t_max / grid.t_min, f);
        break;
      case Spacing::TcRefined: {
        const double tc = *critical_temperature;
        if (!(grid.t_min < tc && tc < grid.t_max)) {
          throw ConfigError("tc-refined spacing needs tmin < T_C = " + format_number(tc) + " < tmax");
        }
        const double s = 2.0 * f - 1.0;
        const double cube = s * s * s;
        t[i] = tc + cube * (s < 0.0 ? tc - grid.t_min : grid.t_max - tc);
        break;
      }
    }
  }
  t.front() = grid.t_min;
  t.back() = grid.t_max;
  return t;
}

}  // namespace bec::cli
