#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pdmspec/config.hpp"
#include "pdmspec/report.hpp"

namespace pdmspec {

// ---------------------------------------------------------------------------
// ambiguity-table

struct AmbiguityRow {
  std::string label;
  AmbiguityParameters params;
  Rational zeta_value{0};
  Rational zeta_minus_beta_value{0};
  std::vector<bool> harmonic_ok;  // indexed by m = 0..m_max
  std::vector<bool> coulomb_ok;
};

std::vector<AmbiguityRow> ambiguity_table(
    const std::vector<std::pair<std::string, AmbiguityParameters>>& orderings, int m_max);

void write_ambiguity_table(std::ostream& os, const std::vector<AmbiguityRow>& rows,
                           OutputFormat format);

// ---------------------------------------------------------------------------
// spectrum / verify

/// Closed-form spectrum only; oracle columns stay empty.
SpectrumReport run_spectrum(const RunConfig& config);

/// Spectrum plus oracle verification: the axial eigensolver checks each
/// separation constant and the self-consistent radial solve checks each
/// energy. Lines are classified agree / documented / unexpected; documented
/// covers the two closed-form conventions that differ from the ODE solution
/// (the linear Morse separation constant, and the Coulombic level-index
/// offset in the energy denominator).
SpectrumReport run_verify(const RunConfig& config);

// ---------------------------------------------------------------------------
// identity-check

struct IdentityCheckResult {
  IdentityReport report;
  double potential_contract = 1e-12;
  double substitution_contract = 1e-9;
  bool within_contract = false;
};

IdentityCheckResult run_identity_check(int potential_samples = 10000);
void write_identity_report(std::ostream& os, const IdentityCheckResult& result,
                           OutputFormat format);

// ---------------------------------------------------------------------------
// sweep

struct SweepSpec {
  enum class Mode { constraint, spectrum, verify };
  Mode mode = Mode::spectrum;
  std::vector<std::string> orderings;                                // empty: keep base ordering
  std::vector<int> m_values;                                         // empty: keep base m range
  std::vector<std::pair<std::string, std::vector<double>>> overrides;  // dotted path -> values
};

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int cells = 0;
  int failed_cells = 0;
  int worst_exit = 0;
};

/// Runs the sweep described by the config's "sweep" section over the base
/// config in the same file. Cells execute on a bounded worker pool; output
/// ordering is by cell index, independent of scheduling.
SweepTable run_sweep(const std::string& config_json_text, int workers);

void write_sweep_table(std::ostream& os, const SweepTable& table, OutputFormat format);

}  // namespace pdmspec
