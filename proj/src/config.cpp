#include "pdmspec/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pdmspec {

using json = nlohmann::ordered_json;

OutputFormat output_format_from_name(const std::string& name)
{
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "table") return OutputFormat::table;
  throw ConfigError("output.format", "unknown format '" + name + "' (csv, json, table)");
}

const char* output_format_name(OutputFormat f)
{
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::table: return "table";
  }
  return "?";
}

namespace {

double require_number(const json& j, const std::string& field)
{
  if (!j.is_number()) {
    throw ConfigError(field, "expected a number");
  }
  return j.get<double>();
}

int require_int(const json& j, const std::string& field)
{
  if (!j.is_number_integer()) {
    throw ConfigError(field, "expected an integer");
  }
  return j.get<int>();
}

std::string require_string(const json& j, const std::string& field)
{
  if (!j.is_string()) {
    throw ConfigError(field, "expected a string");
  }
  return j.get<std::string>();
}

Rational rational_field(const json& j, const std::string& field)
{
  // exact values only: "p/q" strings or integers; floats would lose exactness
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (j.is_number_integer()) {
    return Rational(j.get<long long>());
  }
  throw ConfigError(field, "ordering parameters must be exact: integer or \"p/q\" string");
}

AmbiguityParameters parse_ordering(const json& j, std::string& label)
{
  if (j.contains("named")) {
    const std::string name = require_string(j.at("named"), "ordering.named");
    const auto set = ordering_from_name(name);
    if (!set) {
      throw ConfigError("ordering.named", "unknown ordering set '" + name + "'");
    }
    label = name;
    return named_ordering(*set);
  }
  if (!j.contains("alpha") || !j.contains("beta") || !j.contains("gamma")) {
    throw ConfigError("ordering", "provide either 'named' or all of alpha/beta/gamma");
  }
  const Rational alpha = rational_field(j.at("alpha"), "ordering.alpha");
  const Rational beta = rational_field(j.at("beta"), "ordering.beta");
  const Rational gamma = rational_field(j.at("gamma"), "ordering.gamma");
  try {
    AmbiguityParameters p(alpha, beta, gamma);
    label = "(" + to_string(alpha) + "," + to_string(beta) + "," + to_string(gamma) + ")";
    return p;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("ordering", e.what());
  }
}

RadialPotential parse_radial(const json& j)
{
  const std::string type = require_string(j.at("type"), "radial.type");
  if (type == "harmonic") {
    return HarmonicRadial{require_number(j.at("a"), "radial.a")};
  }
  if (type == "coulomb") {
    return CoulombRadial{require_number(j.at("A_tilde"), "radial.A_tilde")};
  }
  if (type == "none") {
    return NoRadial{};
  }
  throw ConfigError("radial.type", "unknown radial potential '" + type + "'");
}

AxialPotential parse_axial(const json& j)
{
  const std::string type = require_string(j.at("type"), "axial.type");
  if (type == "well") {
    const double L = require_number(j.at("L"), "axial.L");
    if (!(L > 0.0)) throw ConfigError("axial.L", "well width must be positive");
    return InfiniteWell{L};
  }
  if (type == "morse") {
    const double D = require_number(j.at("D"), "axial.D");
    const double eps = require_number(j.at("epsilon"), "axial.epsilon");
    if (!(D > 0.0)) throw ConfigError("axial.D", "Morse depth must be positive");
    if (!(eps > 0.0)) throw ConfigError("axial.epsilon", "Morse range must be positive");
    return MorseAxial{D, eps};
  }
  if (type == "rosen_morse") {
    const double U0 = require_number(j.at("U0"), "axial.U0");
    const double d = require_number(j.at("d"), "axial.d");
    if (!(U0 > 0.0)) throw ConfigError("axial.U0", "Rosen-Morse strength must be positive");
    if (!(d > 0.0)) throw ConfigError("axial.d", "Rosen-Morse width must be positive");
    return RosenMorseTrig{U0, d};
  }
  if (type == "free") {
    return FreeAxial{};
  }
  throw ConfigError("axial.type", "unknown axial potential '" + type + "'");
}

std::pair<int, int> parse_range(const json& j, const std::string& field)
{
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(field, "expected [min, max]");
  }
  const int lo = require_int(j.at(0), field);
  const int hi = require_int(j.at(1), field);
  if (lo > hi) {
    throw ConfigError(field, "min exceeds max");
  }
  return {lo, hi};
}

}  // namespace

RunConfig parse_config(const std::string& json_text)
{
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig config;
  try {
    const std::string family = require_string(j.at("family"), "family");
    if (family == "harmonic") {
      config.family = Family::harmonic;
    } else if (family == "coulomb") {
      config.family = Family::coulomb;
    } else {
      throw ConfigError("family", "expected 'harmonic' or 'coulomb'");
    }

    const double default_upsilon = config.family == Family::harmonic ? 0.5 : -1.0;
    double upsilon = default_upsilon;
    double b = 2.0;
    if (j.contains("mass")) {
      const json& jm = j.at("mass");
      if (jm.contains("upsilon")) upsilon = require_number(jm.at("upsilon"), "mass.upsilon");
      if (jm.contains("b")) b = require_number(jm.at("b"), "mass.b");
    }
    if (upsilon != default_upsilon) {
      throw ConfigError("mass.upsilon", std::string("family '") + family_name(config.family) +
                                            "' requires upsilon = " +
                                            (config.family == Family::harmonic ? "1/2" : "-1"));
    }
    if (b == 0.0) {
      throw ConfigError("mass.b", "mass scale b must be nonzero");
    }
    config.mass = MassProfile(upsilon, b);

    config.radial = parse_radial(j.at("radial"));
    const bool radial_matches =
        config.family == Family::harmonic ? std::holds_alternative<HarmonicRadial>(config.radial)
                                          : std::holds_alternative<CoulombRadial>(config.radial);
    if (!radial_matches) {
      throw ConfigError("radial.type", std::string("family '") + family_name(config.family) +
                                           "' requires the matching radial potential");
    }

    config.axial = parse_axial(j.at("axial"));
    if (std::holds_alternative<FreeAxial>(config.axial)) {
      throw ConfigError("axial.type", "spectra need a discrete axial channel (well, morse, "
                                      "rosen_morse)");
    }

    config.ordering = parse_ordering(j.at("ordering"), config.ordering_label);

    const json& jr = j.at("ranges");
    std::tie(config.ranges.n_rho_min, config.ranges.n_rho_max) =
        parse_range(jr.at("n_rho"), "ranges.n_rho");
    std::tie(config.ranges.m_min, config.ranges.m_max) = parse_range(jr.at("m"), "ranges.m");
    std::tie(config.ranges.n_axial_min, config.ranges.n_axial_max) =
        parse_range(jr.at("n_axial"), "ranges.n_axial");
    if (config.ranges.n_rho_min < 0) throw ConfigError("ranges.n_rho", "must be >= 0");
    if (config.ranges.m_min < 0) throw ConfigError("ranges.m", "must be >= 0");
    const int axial_floor = std::holds_alternative<InfiniteWell>(config.axial) ? 1 : 0;
    if (config.ranges.n_axial_min < axial_floor) {
      throw ConfigError("ranges.n_axial", axial_floor == 1 ? "well levels start at 1"
                                                           : "levels start at 0");
    }

    if (j.contains("oracle")) {
      const json& jo = j.at("oracle");
      if (jo.contains("enabled")) {
        if (!jo.at("enabled").is_boolean()) throw ConfigError("oracle.enabled", "expected a bool");
        config.oracle_enabled = jo.at("enabled").get<bool>();
      }
      if (jo.contains("grid_points")) {
        config.oracle.n_points = require_int(jo.at("grid_points"), "oracle.grid_points");
        if (config.oracle.n_points < 16) throw ConfigError("oracle.grid_points", "must be >= 16");
      }
      if (jo.contains("axial_tol")) {
        config.oracle.axial_tol = require_number(jo.at("axial_tol"), "oracle.axial_tol");
        if (!(config.oracle.axial_tol > 0.0)) throw ConfigError("oracle.axial_tol", "must be > 0");
      }
      if (jo.contains("loose_axial_tol")) {
        config.oracle.loose_axial_tol =
            require_number(jo.at("loose_axial_tol"), "oracle.loose_axial_tol");
        if (!(config.oracle.loose_axial_tol > 0.0))
          throw ConfigError("oracle.loose_axial_tol", "must be > 0");
      }
      if (jo.contains("radial_tol")) {
        config.oracle.radial_tol = require_number(jo.at("radial_tol"), "oracle.radial_tol");
        if (!(config.oracle.radial_tol > 0.0))
          throw ConfigError("oracle.radial_tol", "must be > 0");
      }
      if (jo.contains("energy_tol")) {
        config.verify_energy_tol = require_number(jo.at("energy_tol"), "oracle.energy_tol");
        if (!(config.verify_energy_tol > 0.0)) throw ConfigError("oracle.energy_tol", "must be > 0");
      }
      if (jo.contains("rho_max")) {
        config.oracle.rho_max = require_number(jo.at("rho_max"), "oracle.rho_max");
        if (config.oracle.rho_max < 0.0) throw ConfigError("oracle.rho_max", "must be >= 0");
      }
    }

    if (j.contains("output")) {
      const json& jo = j.at("output");
      if (jo.contains("format")) {
        config.format = output_format_from_name(require_string(jo.at("format"), "output.format"));
      }
      if (jo.contains("path")) {
        config.out_path = require_string(jo.at("path"), "output.path");
      }
    }
  } catch (const json::out_of_range& e) {
    throw ConfigError("", std::string("missing required section: ") + e.what());
  } catch (const json::type_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  return config;
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("", "cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const RunConfig& config)
{
  json j;
  j["family"] = family_name(config.family);
  j["mass"] = {{"upsilon", config.mass.upsilon}, {"b", config.mass.b}};
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HarmonicRadial>) {
          j["radial"] = {{"type", "harmonic"}, {"a", v.a}};
        } else if constexpr (std::is_same_v<T, CoulombRadial>) {
          j["radial"] = {{"type", "coulomb"}, {"A_tilde", v.A_tilde}};
        } else {
          j["radial"] = {{"type", "none"}};
        }
      },
      config.radial);
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          j["axial"] = {{"type", "well"}, {"L", v.L}};
        } else if constexpr (std::is_same_v<T, MorseAxial>) {
          j["axial"] = {{"type", "morse"}, {"D", v.D}, {"epsilon", v.epsilon}};
        } else if constexpr (std::is_same_v<T, RosenMorseTrig>) {
          j["axial"] = {{"type", "rosen_morse"}, {"U0", v.U0}, {"d", v.d}};
        } else {
          j["axial"] = {{"type", "free"}};
        }
      },
      config.axial);
  j["ordering"] = {{"alpha", to_string(config.ordering.alpha)},
                   {"beta", to_string(config.ordering.beta)},
                   {"gamma", to_string(config.ordering.gamma)}};
  j["ranges"] = {{"n_rho", {config.ranges.n_rho_min, config.ranges.n_rho_max}},
                 {"m", {config.ranges.m_min, config.ranges.m_max}},
                 {"n_axial", {config.ranges.n_axial_min, config.ranges.n_axial_max}}};
  j["oracle"] = {{"enabled", config.oracle_enabled},
                 {"grid_points", config.oracle.n_points},
                 {"axial_tol", config.oracle.axial_tol},
                 {"radial_tol", config.oracle.radial_tol},
                 {"energy_tol", config.verify_energy_tol},
                 {"rho_max", config.oracle.rho_max}};
  j["output"] = {{"format", output_format_name(config.format)}};
  if (!config.out_path.empty()) {
    j["output"]["path"] = config.out_path;
  }
  return j.dump(2);
}

}  // namespace pdmspec
