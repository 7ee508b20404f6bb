#include "et6/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace et6 {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError(key + ": " + why);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    bad(key, "expected a number, got '" + t + "'");
  }
  if (used != t.size()) bad(key, "expected a number, got '" + t + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    bad(key, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) bad(key, "expected an integer, got '" + t + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    bad(key, "integer out of range");
  }
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad(key, "expected true or false, got '" + trim(text) + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<double> out;
  std::string item;
  while (is >> item) out.push_back(to_double(key, item));
  if (out.empty()) bad(key, "expected a comma-separated list of numbers");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

struct KeyTable {
  std::vector<std::string> canonical;
  std::map<std::string, std::pair<std::string, Setter>> by_lower;

  void add(const std::string& name, Setter s) {
    canonical.push_back(name);
    by_lower[lower(name)] = {name, std::move(s)};
  }
};

template <class Field>
Setter dbl(Field field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v) {
    field(c) = to_double(k, v);
  };
}

template <class Field>
Setter integer(Field field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v) {
    field(c) = to_int(k, v);
  };
}

Setter gas_field(int which) {
  return [which](RunConfig& c, const std::string& k, const std::string& v) {
    const double x = to_double(k, v);
    double D = c.gas.D(), m = c.gas.m(), kB = c.gas.kB(), tau = c.gas.tau();
    switch (which) {
      case 0:
        if (!(x > 3.0)) bad(k, "requires D > 3");
        if (x < kMinDegreesOfFreedom) bad(k, "requires D >= 3 + 1e-6");
        D = x;
        break;
      case 1: m = x; break;
      case 2: kB = x; break;
      default: tau = x; break;
    }
    try {
      c.gas = GasSpec(D, m, kB, tau);
    } catch (const std::invalid_argument& e) {
      bad(k, e.what());
    }
  };
}

const KeyTable& table() {
  static const KeyTable t = [] {
    KeyTable t;
    t.add("gas.D", gas_field(0));
    t.add("gas.m", gas_field(1));
    t.add("gas.kB", gas_field(2));
    t.add("gas.tau", gas_field(3));

    auto sc = [](auto member) {
      return [member](RunConfig& c) -> auto& { return c.scenario.*member; };
    };
    t.add("scenario.kind", [](RunConfig& c, const std::string& k, const std::string& v) {
      try {
        c.scenario.kind = parse_scenario_kind(lower(trim(v)));
      } catch (const std::invalid_argument& e) {
        bad(k, e.what());
      }
    });
    t.add("scenario.boundary", [](RunConfig& c, const std::string& k, const std::string& v) {
      try {
        c.scenario.boundary = parse_boundary(lower(trim(v)));
      } catch (const std::invalid_argument& e) {
        bad(k, e.what());
      }
    });
    t.add("scenario.profile", [](RunConfig& c, const std::string&, const std::string& v) {
      c.scenario.profile = lower(trim(v));
    });
    t.add("scenario.N", integer(sc(&Scenario::N)));
    t.add("scenario.order", integer(sc(&Scenario::order)));
    t.add("scenario.max_steps", integer(sc(&Scenario::max_steps)));
    t.add("scenario.x_left", dbl(sc(&Scenario::x_left)));
    t.add("scenario.x_right", dbl(sc(&Scenario::x_right)));
    t.add("scenario.cfl", dbl(sc(&Scenario::cfl)));
    t.add("scenario.t_end", dbl(sc(&Scenario::t_end)));
    t.add("scenario.fixed_dt", dbl(sc(&Scenario::fixed_dt)));
    t.add("scenario.max_projection_fraction", dbl(sc(&Scenario::max_projection_fraction)));
    t.add("scenario.rho", dbl(sc(&Scenario::rho)));
    t.add("scenario.vx", dbl(sc(&Scenario::vx)));
    t.add("scenario.T", dbl(sc(&Scenario::T)));
    t.add("scenario.Pi_over_p", dbl(sc(&Scenario::Pi_over_p)));
    t.add("scenario.amplitude", dbl(sc(&Scenario::amplitude)));
    t.add("scenario.width", dbl(sc(&Scenario::width)));
    t.add("scenario.x0", dbl(sc(&Scenario::x0)));
    t.add("scenario.rho_L", dbl(sc(&Scenario::rho_L)));
    t.add("scenario.vx_L", dbl(sc(&Scenario::vx_L)));
    t.add("scenario.T_L", dbl(sc(&Scenario::T_L)));
    t.add("scenario.Pi_over_p_L", dbl(sc(&Scenario::Pi_over_p_L)));
    t.add("scenario.rho_R", dbl(sc(&Scenario::rho_R)));
    t.add("scenario.vx_R", dbl(sc(&Scenario::vx_R)));
    t.add("scenario.T_R", dbl(sc(&Scenario::T_R)));
    t.add("scenario.Pi_over_p_R", dbl(sc(&Scenario::Pi_over_p_R)));

    auto quad = [](auto member) {
      return [member](RunConfig& c) -> auto& { return c.check.quad.*member; };
    };
    auto chk = [](auto member) {
      return [member](RunConfig& c) -> auto& { return c.check.*member; };
    };
    t.add("check.hermite_order", integer(quad(&QuadratureSpec::hermite_order)));
    t.add("check.laguerre_order", integer(quad(&QuadratureSpec::laguerre_order)));
    t.add("check.max_laguerre_order", integer(quad(&QuadratureSpec::max_laguerre_order)));
    t.add("check.adaptive_tol", dbl(quad(&QuadratureSpec::adaptive_tol)));
    t.add("check.verify_with_adaptive", [](RunConfig& c, const std::string& k, const std::string& v) {
      c.check.quad.verify_with_adaptive = to_bool(k, v);
    });
    t.add("check.oracle_tol", dbl(chk(&CheckConfig::oracle_tol)));
    t.add("check.moment_tol", dbl(chk(&CheckConfig::moment_tol)));
    t.add("check.gradient_tol", dbl(chk(&CheckConfig::gradient_tol)));
    t.add("check.k_tol", dbl(chk(&CheckConfig::k_tol)));
    t.add("check.entropy_step_tol", dbl(chk(&CheckConfig::entropy_step_tol)));
    t.add("check.ns_factor", dbl(chk(&CheckConfig::ns_factor)));
    t.add("check.reduction_tol", dbl(chk(&CheckConfig::reduction_tol)));
    t.add("check.speed_tol", dbl(chk(&CheckConfig::speed_tol)));
    t.add("check.relax_tol", dbl(chk(&CheckConfig::relax_tol)));
    t.add("check.conservation_tol", dbl(chk(&CheckConfig::conservation_tol)));
    t.add("check.monatomic_tol", dbl(chk(&CheckConfig::monatomic_tol)));
    t.add("check.sod_tol", dbl(chk(&CheckConfig::sod_tol)));
    t.add("check.z_points", integer(chk(&CheckConfig::z_points)));
    t.add("check.grid_points", integer(chk(&CheckConfig::grid_points)));
    t.add("check.random_states", integer(chk(&CheckConfig::random_states)));
    t.add("check.d_values", [](RunConfig& c, const std::string& k, const std::string& v) {
      c.check.d_values = to_list(k, v);
    });
    t.add("check.seed", [](RunConfig& c, const std::string& k, const std::string& v) {
      const long long s = to_integer(k, v);
      if (s < 0) bad(k, "must be non-negative");
      c.check.seed = static_cast<std::uint64_t>(s);
    });

    t.add("output.dir", [](RunConfig& c, const std::string&, const std::string& v) {
      c.output.dir = trim(v);
    });
    t.add("output.cadence", [](RunConfig& c, const std::string& k, const std::string& v) {
      c.output.cadence = to_double(k, v);
    });
    t.add("output.precision", [](RunConfig& c, const std::string& k, const std::string& v) {
      c.output.precision = to_int(k, v);
    });
    return t;
  }();
  return t;
}

}  // namespace

const std::vector<std::string>& known_config_keys() { return table().canonical; }

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto it = table().by_lower.find(lower(key));
  if (it == table().by_lower.end()) bad(key, "unknown key");
  const auto& [name, setter] = it->second;
  setter(*this, name, value);
  explicit_keys.insert(name);
}

void RunConfig::validate() {
  auto positive = [](const std::string& key, double v) {
    if (!(v > 0.0)) bad(key, "must be positive");
  };
  try {
    check.quad.validate();
  } catch (const std::invalid_argument& e) {
    bad("check", e.what());
  }
  if (check.quad.max_laguerre_order < check.quad.laguerre_order) {
    bad("check.max_laguerre_order", "must be >= laguerre_order");
  }
  positive("check.oracle_tol", check.oracle_tol);
  positive("check.moment_tol", check.moment_tol);
  positive("check.gradient_tol", check.gradient_tol);
  positive("check.k_tol", check.k_tol);
  positive("check.entropy_step_tol", check.entropy_step_tol);
  positive("check.ns_factor", check.ns_factor);
  positive("check.reduction_tol", check.reduction_tol);
  positive("check.speed_tol", check.speed_tol);
  positive("check.relax_tol", check.relax_tol);
  positive("check.conservation_tol", check.conservation_tol);
  positive("check.monatomic_tol", check.monatomic_tol);
  positive("check.sod_tol", check.sod_tol);
  if (check.z_points < 2) bad("check.z_points", "need at least 2 points");
  if (check.grid_points < 2) bad("check.grid_points", "need at least 2 points");
  if (check.random_states < 1) bad("check.random_states", "need at least 1 state");
  for (double D : check.d_values) {
    if (!(D >= kMinDegreesOfFreedom)) bad("check.d_values", "every entry requires D > 3");
  }
  if (output.cadence < 0.0) bad("output.cadence", "must be >= 0");
  if (output.precision < 6 || output.precision > 17) bad("output.precision", "must lie in [6, 17]");
  if (output.dir.empty()) bad("output.dir", "must not be empty");
  try {
    resolved_scenario().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void RunConfig::apply_quick() {
  quick = true;
  check.quad.hermite_order = std::max(16, check.quad.hermite_order / 4);
  check.quad.laguerre_order = std::max(16, check.quad.laguerre_order / 8);
  check.z_points = std::max(3, check.z_points / 2);
  if (check.d_values.size() > 3) {
    const std::vector<double> d = check.d_values;
    check.d_values = {d.front(), d[d.size() / 2], d.back()};
  }
  check.grid_points = std::max(5, check.grid_points / 4);
  check.random_states = std::max(6, check.random_states / 8);
  scenario.N = std::max(16, scenario.N / 4);
}

Scenario RunConfig::resolved_scenario() const {
  Scenario sc = scenario;
  sc.gas = gas;
  if (output.cadence > 0.0) sc.output_interval = output.cadence;
  return sc;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  namespace pt = boost::property_tree;
  // Trailing "; ..." or "# ..." comments are dropped before the INI reader
  // sees the line; it only understands whole-line comments.
  std::ostringstream cleaned;
  for (std::string line; std::getline(in, line);) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
        line.erase(i);
        break;
      }
    }
    cleaned << line << '\n';
  }
  std::istringstream stripped(cleaned.str());
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(stripped, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << source << ":" << e.line() << ": " << e.message();
    throw ConfigError(os.str());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) bad(section, "key outside of a [section]");
    for (const auto& [key, value] : body) {
      if (!value.empty()) bad(section + "." + key, "nested keys are not supported");
      cfg.set(section + "." + key, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

}  // namespace et6
