#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "et6/oracle.hpp"
#include "et6/solver.hpp"

namespace et6 {

struct CheckConfig {
  QuadratureSpec quad;
  double oracle_tol = 1e-8;
  double moment_tol = 1e-10;
  double gradient_tol = 1e-6;
  double k_tol = 1e-10;
  double entropy_step_tol = 1e-10;
  /// NS-limit deviation must stay below ns_factor * tau.
  double ns_factor = 10.0;
  double reduction_tol = 1e-12;
  double speed_tol = 1e-10;
  double relax_tol = 1e-12;
  double conservation_tol = 1e-13;
  double monatomic_tol = 1e-6;
  double sod_tol = 1e-2;
  int z_points = 7;
  std::vector<double> d_values{3.5, 4.0, 5.0, 6.0, 7.0, 9.0, 12.0};
  int grid_points = 21;
  int random_states = 50;
  std::uint64_t seed = 20240611;
};

struct OutputConfig {
  std::string dir = ".";
  /// Snapshot interval in time; 0 writes the initial and final states.
  double cadence = 0.0;
  int precision = 12;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  GasSpec gas;
  Scenario scenario;
  CheckConfig check;
  OutputConfig output;
  bool quick = false;
  /// "section.key" entries given explicitly in a file or on the command line.
  std::set<std::string> explicit_keys;

  bool is_set(const std::string& key) const { return explicit_keys.count(key) > 0; }

  /// Sets "section.key" from text, validating the key name and type.
  void set(const std::string& key, const std::string& value);

  /// Cross-field checks; throws ConfigError naming the key.
  void validate();

  /// Scales sweeps, orders and grids down by roughly 8x.
  void apply_quick();

  /// Scenario with the gas block and output cadence folded in.
  Scenario resolved_scenario() const;
};

/// Line-oriented `key = value` with `[section]` headers and ';' or '#'
/// comments. Keys are matched case-insensitively.
RunConfig parse_config(std::istream& in, const std::string& source = "<stream>");
RunConfig load_config(const std::string& path);

/// Known keys, "section.key", in canonical spelling.
const std::vector<std::string>& known_config_keys();

}  // namespace et6
