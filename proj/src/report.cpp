#include "pdmspec/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pdmspec {

using json = nlohmann::ordered_json;

std::string format_double(double v)
{
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::string csv_escape(const std::string& field)
{
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

const char* line_verdict_name(LineVerdict v)
{
  switch (v) {
    case LineVerdict::agree: return "agree";
    case LineVerdict::documented: return "documented";
    case LineVerdict::unexpected: return "unexpected";
    case LineVerdict::constraint: return "constraint";
    case LineVerdict::not_compared: return "not_compared";
  }
  return "?";
}

int VerifySummary::exit_code() const
{
  if (unexpected > 0) {
    return 1;
  }
  if (not_converged > 0) {
    return 3;
  }
  return 0;
}

namespace {

std::string opt_str(const std::optional<double>& v)
{
  return v ? format_double(*v) : std::string{};
}

std::string flags_str(const SpectrumLine& line)
{
  std::string out;
  for (const auto& f : line.flags) {
    if (!out.empty()) {
      out += ';';
    }
    out += f;
  }
  return out;
}

json line_to_json(const SpectrumLine& line, const SpectrumReport& report, std::size_t index)
{
  json j;
  j["n_rho"] = line.qn.n_rho;
  j["m"] = line.qn.m;
  j["n_axial"] = line.qn.n_axial;
  j["branch"] = branch_name(line.branch);
  j["kz2_analytic"] = line.kz2_analytic;
  j["kz2_oracle"] = line.kz2_oracle ? json(*line.kz2_oracle) : json(nullptr);
  j["E_analytic"] = line.e_analytic ? json(*line.e_analytic) : json("complex");
  j["E_oracle"] = line.e_oracle ? json(*line.e_oracle) : json(nullptr);
  j["residual_kz2"] = line.residual_kz2 ? json(*line.residual_kz2) : json(nullptr);
  j["residual_E"] = line.residual_e ? json(*line.residual_e) : json(nullptr);
  j["constraint_ok"] = line.constraint_ok;
  j["flags"] = line.flags;
  if (index < report.verdicts.size()) {
    j["verdict"] = line_verdict_name(report.verdicts[index]);
  }
  return j;
}

}  // namespace

void write_csv(std::ostream& os, const SpectrumReport& report)
{
  os << "n_rho,m,n_axial,branch,kz2_analytic,kz2_oracle,E_analytic,E_oracle,"
        "residual_kz2,residual_E,constraint_ok,flags\n";
  for (const SpectrumLine& line : report.lines) {
    os << line.qn.n_rho << ',' << line.qn.m << ',' << line.qn.n_axial << ','
       << branch_name(line.branch) << ',' << format_double(line.kz2_analytic) << ','
       << opt_str(line.kz2_oracle) << ','
       << (line.e_analytic ? format_double(*line.e_analytic) : std::string("complex")) << ','
       << opt_str(line.e_oracle) << ',' << opt_str(line.residual_kz2) << ','
       << opt_str(line.residual_e) << ',' << (line.constraint_ok ? "true" : "false") << ','
       << csv_escape(flags_str(line)) << '\n';
  }
}

void write_json(std::ostream& os, const SpectrumReport& report)
{
  json j;
  j["lines"] = json::array();
  for (std::size_t i = 0; i < report.lines.size(); ++i) {
    j["lines"].push_back(line_to_json(report.lines[i], report, i));
  }
  if (report.verified) {
    j["summary"] = {{"agree", report.summary.agree},
                    {"documented", report.summary.documented},
                    {"unexpected", report.summary.unexpected},
                    {"constraint_failures", report.summary.constraint_failures},
                    {"not_compared", report.summary.not_compared},
                    {"not_converged", report.summary.not_converged},
                    {"exit_code", report.summary.exit_code()}};
  }
  os << j.dump(2) << '\n';
}

void write_table(std::ostream& os, const SpectrumReport& report)
{
  os << std::left << std::setw(6) << "n_rho" << std::setw(4) << "m" << std::setw(8) << "n_axial"
     << std::setw(7) << "branch" << std::setw(18) << "kz2_analytic" << std::setw(18)
     << "kz2_oracle" << std::setw(18) << "E_analytic" << std::setw(18) << "E_oracle"
     << std::setw(13) << "res_kz2" << std::setw(13) << "res_E" << std::setw(11) << "constraint"
     << "flags\n";
  for (std::size_t i = 0; i < report.lines.size(); ++i) {
    const SpectrumLine& line = report.lines[i];
    auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : "-"; };
    os << std::left << std::setw(6) << line.qn.n_rho << std::setw(4) << line.qn.m << std::setw(8)
       << line.qn.n_axial << std::setw(7) << branch_name(line.branch) << std::setw(18)
       << format_double(line.kz2_analytic) << std::setw(18) << cell(line.kz2_oracle)
       << std::setw(18) << (line.e_analytic ? format_double(*line.e_analytic) : "complex")
       << std::setw(18) << cell(line.e_oracle) << std::setw(13) << cell(line.residual_kz2)
       << std::setw(13) << cell(line.residual_e) << std::setw(11)
       << (line.constraint_ok ? "ok" : "violated") << flags_str(line);
    if (i < report.verdicts.size()) {
      os << (flags_str(line).empty() ? "" : " ") << "[" << line_verdict_name(report.verdicts[i])
         << "]";
    }
    os << '\n';
  }
}

void write_report(std::ostream& os, const SpectrumReport& report, OutputFormat format)
{
  switch (format) {
    case OutputFormat::csv: write_csv(os, report); break;
    case OutputFormat::json: write_json(os, report); break;
    case OutputFormat::table: write_table(os, report); break;
  }
}

std::string summary_note(const SpectrumReport& report)
{
  if (!report.verified) {
    std::ostringstream os;
    os << "spectrum: " << report.lines.size() << " lines";
    return os.str();
  }
  const VerifySummary& s = report.summary;
  std::ostringstream os;
  os << "verify: " << s.agree << " agree, " << s.documented << " documented, " << s.unexpected
     << " unexpected, " << s.constraint_failures << " constraint-flagged, " << s.not_compared
     << " not compared, " << s.not_converged << " not converged";
  if (s.unexpected == 0 && s.documented > 0) {
    os << " (note: documented convention differences only)";
  }
  return os.str();
}

}  // namespace pdmspec
