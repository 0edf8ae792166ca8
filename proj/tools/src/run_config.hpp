#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bec/condensate.hpp"
#include "bec/thermo.hpp"

namespace bec::cli {

/// Bad config file, flag value or combination; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log, TcRefined };
enum class Format { Csv, Json };

struct GridSpec {
  double t_min = 0.5;
  double t_max = 5.0;
  int points = 10;
  Spacing spacing = Spacing::Linear;
};

struct RunConfig {
  thermo::ModelParams model;
  double mu = 0.0;  // fixed chemical potential when no charge density is set
  thermo::Geometry geometry;
  std::optional<condensate::ChargeSpec> charge;
  GridSpec grid;
  AccuracyBudget acc{1e-8};
  Format format = Format::Csv;
  std::string out_path;  // empty: stdout
  unsigned threads = 0;

  /// Every recognised key with its current value, in key order.
  std::map<std::string, std::string> entries() const;
};

/// Flat `section.key = value` lines; `#` starts a comment.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies entries over the defaults; unknown keys and malformed values raise ConfigError.
RunConfig build_config(const std::map<std::string, std::string>& entries);

const std::vector<std::string>& known_keys();

/// Temperatures of the grid in increasing order. tc-refined spacing clusters
/// points at T_C as T_C + span |s|^3 sign(s), s evenly spaced in [-1, 1].
std::vector<double> temperature_grid(const GridSpec& grid, std::optional<double> critical_temperature);

}  // namespace bec::cli
