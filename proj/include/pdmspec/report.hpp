#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pdmspec/analytic.hpp"
#include "pdmspec/config.hpp"

namespace pdmspec {

/// Deterministic, locale-independent number formatting ("%.12g"); all data
/// files are built from this so repeated runs are byte-identical.
std::string format_double(double v);

/// RFC 4180: quotes fields containing separators, quotes or newlines.
std::string csv_escape(const std::string& field);

/// Outcome classification of one verified line.
enum class LineVerdict {
  agree,        // residuals within tolerance
  documented,   // known closed-form vs ODE convention difference
  unexpected,   // disagreement not covered by a documented convention
  constraint,   // constraint / axial-condition failure: nothing to compare
  not_compared  // oracle disabled or value out of the comparable domain
};
const char* line_verdict_name(LineVerdict v);

struct VerifySummary {
  int agree = 0;
  int documented = 0;
  int unexpected = 0;
  int constraint_failures = 0;
  int not_compared = 0;
  int not_converged = 0;  // non-convergence on a line that required agreement

  /// 0 all-agree (or agree plus documented, with a note), 1 unexpected
  /// mismatch, 3 oracle non-convergence in a required check.
  int exit_code() const;
};

struct SpectrumReport {
  std::vector<SpectrumLine> lines;
  std::vector<LineVerdict> verdicts;  // parallel to lines; empty when not verified
  VerifySummary summary;
  bool verified = false;
};

void write_csv(std::ostream& os, const SpectrumReport& report);
void write_json(std::ostream& os, const SpectrumReport& report);
void write_table(std::ostream& os, const SpectrumReport& report);
void write_report(std::ostream& os, const SpectrumReport& report, OutputFormat format);

std::string summary_note(const SpectrumReport& report);

}  // namespace pdmspec
