#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "bec/errors.hpp"
#include "commands.hpp"

namespace bec::cli {
namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
  const char* type = "NUM";
};

constexpr FlagSpec kModelFlags[] = {
    {"--mass", "model.mass", "Particle mass m"},
    {"--dim", "model.dimension", "Spatial dimension D (1, 2 or 3)", "INT"},
    {"--cutoff", "model.cutoff", "UV cutoff Lambda"},
    {"--field", "model.field", "neutral | charged", "KIND"},
    {"--mu", "model.mu", "Chemical potential of a charged field without fixed charge"},
    {"--charge-density", "charge.density", "Net charge density rho (fixes the charge)"},
    {"--regime", "charge.regime", "nr | rel | auto", "REGIME"},
    {"--v2", "geometry.v2", "Transverse area V_2 used at fixed charge"},
    {"--varea", "geometry.varea", "Boundary area V_{D-1}"},
    {"--vvol", "geometry.vvol", "Subsystem volume V_D"},
    {"--rtol", "tolerances.rtol", "Relative tolerance of integrals and sums"},
    {"--threads", "run.threads", "Worker threads (0 = all cores)", "INT"},
};

constexpr FlagSpec kGridFlags[] = {
    {"--tmin", "grid.tmin", "Lowest temperature"},
    {"--tmax", "grid.tmax", "Highest temperature"},
    {"--points", "grid.points", "Number of temperatures", "INT"},
    {"--spacing", "grid.spacing", "linear | log | tc-refined", "SPACING"},
    {"--format", "output.format", "csv | json", "FORMAT"},
};

using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement entropy and mutual information of free scalar fields, "
               "with Bose-Einstein condensation at fixed charge"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> only;

  auto add_flags = [&](CLI::App* sub, bool grid) {
    sub->add_option("--config", config_path, "key=value config file; flags override it")->type_name("FILE");
    sub->add_option("--out", out_path, "Output file (default: stdout)")->type_name("FILE");
    auto add = [&](const FlagSpec& f) {
      const std::string key = f.key;
      sub->add_option_function<std::string>(
          f.flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, f.help)
          ->type_name(f.type);
    };
    for (const auto& f : kModelFlags) add(f);
    if (grid) {
      for (const auto& f : kGridFlags) add(f);
    }
  };

  const std::vector<std::tuple<const char*, const char*, Command, bool>> commands{
      {"mutual-info", "Mutual information over a temperature grid", cmd_mutual_info, true},
      {"entropy", "Geometric entropy decomposition over a temperature grid", cmd_entropy, true},
      {"mu-solve", "Chemical potential and condensate fraction at fixed charge", cmd_mu_solve, true},
      {"tc", "Critical temperature at fixed charge", cmd_tc, true},
      {"discontinuity", "Jump of dI/dT at the critical temperature (JSON)", cmd_discontinuity, false},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, help, fn, grid] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, grid);
    subs.emplace_back(sub, fn);
  }
  CLI::App* verify = app.add_subcommand("verify", "Run the identity oracle suite (JSON lines)");
  verify->add_option("--only", only, "Restrict to oracle families")->delimiter(',');
  verify->add_option("--out", out_path, "Output file (default: stdout)");
  unsigned verify_threads = 0;
  verify->add_option("--threads", verify_threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = e.get_exit_code();
    if (code == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    auto sink = [&](const std::string& path) -> std::ostream& {
      if (path.empty()) return out;
      file = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file) throw ConfigError("cannot open output file '" + path + "'");
      return *file;
    };

    if (verify->parsed()) return cmd_verify(only, verify_threads, sink(out_path), err);

    std::map<std::string, std::string> entries;
    if (!config_path.empty()) entries = read_config_file(config_path);
    for (const auto& [k, v] : overrides) entries[k] = v;
    if (!out_path.empty()) entries["output.path"] = out_path;
    const RunConfig config = build_config(entries);

    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) {
        std::ostream& dest = sink(config.out_path);
        const int code = fn(config, dest, err);
        dest.flush();
        return code;
      }
    }
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const bec::DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace bec::cli
