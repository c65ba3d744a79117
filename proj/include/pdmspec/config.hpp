#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "pdmspec/ambiguity.hpp"
#include "pdmspec/analytic.hpp"
#include "pdmspec/model.hpp"
#include "pdmspec/oracle.hpp"

namespace pdmspec {

/// Raised on malformed or inconsistent configuration; carries the offending
/// field path so the caller can point at it. Always raised before any
/// numerical work starts.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field_in, const std::string& message)
      : std::runtime_error(field_in.empty() ? message : field_in + ": " + message),
        field(std::move(field_in))
  {
  }
  std::string field;
};

enum class OutputFormat { csv, json, table };
OutputFormat output_format_from_name(const std::string& name);
const char* output_format_name(OutputFormat f);

struct RunConfig {
  Family family = Family::harmonic;
  MassProfile mass{0.5, 2.0};
  RadialPotential radial = HarmonicRadial{2.0};
  AxialPotential axial = InfiniteWell{M_PI};
  AmbiguityParameters ordering = named_ordering(OrderingSet::BenDanielDuke);
  std::string ordering_label = "BenDanielDuke";
  QuantumRanges ranges;
  OracleSettings oracle;
  bool oracle_enabled = true;
  double verify_energy_tol = 1e-5;  // absolute
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty: write records to stdout
};

/// Parses and validates a config file (JSON; ordering rationals as "p/q"
/// strings survive exactly).
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Serializes back to the canonical JSON layout (used by sweep overrides).
std::string config_to_json(const RunConfig& config);

}  // namespace pdmspec
