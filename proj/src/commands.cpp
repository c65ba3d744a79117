#include "pdmspec/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pdmspec/oracle.hpp"

namespace pdmspec {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// ambiguity-table

std::vector<AmbiguityRow> ambiguity_table(
    const std::vector<std::pair<std::string, AmbiguityParameters>>& orderings, int m_max)
{
  if (m_max < 0) {
    throw std::invalid_argument("m_max must be >= 0");
  }
  std::vector<AmbiguityRow> rows;
  rows.reserve(orderings.size());
  for (const auto& [label, params] : orderings) {
    AmbiguityRow row{label, params};
    row.zeta_value = zeta(params);
    row.zeta_minus_beta_value = zeta_minus_beta(params);
    for (int m = 0; m <= m_max; ++m) {
      row.harmonic_ok.push_back(reality_ok_harmonic(params, m));
      row.coulomb_ok.push_back(reality_ok_coulomb(params, m));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_ambiguity_table(std::ostream& os, const std::vector<AmbiguityRow>& rows,
                           OutputFormat format)
{
  const int m_max = rows.empty() ? -1 : static_cast<int>(rows.front().harmonic_ok.size()) - 1;
  if (format == OutputFormat::json) {
    json j = json::array();
    for (const AmbiguityRow& row : rows) {
      json jr;
      jr["ordering"] = row.label;
      jr["alpha"] = to_string(row.params.alpha);
      jr["beta"] = to_string(row.params.beta);
      jr["gamma"] = to_string(row.params.gamma);
      jr["zeta"] = to_string(row.zeta_value);
      jr["zeta_minus_beta"] = to_string(row.zeta_minus_beta_value);
      for (int m = 0; m <= m_max; ++m) {
        jr["harmonic_ok_m" + std::to_string(m)] = static_cast<bool>(row.harmonic_ok[m]);
        jr["coulomb_ok_m" + std::to_string(m)] = static_cast<bool>(row.coulomb_ok[m]);
      }
      j.push_back(jr);
    }
    os << j.dump(2) << '\n';
    return;
  }

  const char sep = format == OutputFormat::csv ? ',' : ' ';
  auto cell = [&](const std::string& s, int width) {
    if (format == OutputFormat::csv) {
      return csv_escape(s);
    }
    std::string padded = s;
    padded.resize(std::max<std::size_t>(padded.size(), width), ' ');
    return padded;
  };
  os << cell("ordering", 23) << sep << cell("alpha", 6) << sep << cell("beta", 6) << sep
     << cell("gamma", 6) << sep << cell("zeta", 5) << sep << cell("zeta_minus_beta", 16);
  for (int m = 0; m <= m_max; ++m) {
    os << sep << cell("harmonic_ok_m" + std::to_string(m), 14);
  }
  for (int m = 0; m <= m_max; ++m) {
    os << sep << cell("coulomb_ok_m" + std::to_string(m), 13);
  }
  os << '\n';
  for (const AmbiguityRow& row : rows) {
    os << cell(row.label, 23) << sep << cell(to_string(row.params.alpha), 6) << sep
       << cell(to_string(row.params.beta), 6) << sep << cell(to_string(row.params.gamma), 6) << sep
       << cell(to_string(row.zeta_value), 5) << sep
       << cell(to_string(row.zeta_minus_beta_value), 16);
    for (int m = 0; m <= m_max; ++m) {
      os << sep << cell(row.harmonic_ok[m] ? "true" : "false", 14);
    }
    for (int m = 0; m <= m_max; ++m) {
      os << sep << cell(row.coulomb_ok[m] ? "true" : "false", 13);
    }
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// spectrum

SpectrumReport run_spectrum(const RunConfig& config)
{
  SpectrumReport report;
  report.lines = assemble_spectrum(config.family, config.mass, config.radial, config.axial,
                                   config.ordering, config.ranges);
  report.verified = false;
  return report;
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct AxialOracle {
  std::vector<EigenResult> levels;  // index 0 = lowest
  int level_offset = 0;             // n_axial -> levels[n_axial - offset]
};

AxialOracle solve_axial_levels(const RunConfig& config)
{
  AxialOracle out;
  out.level_offset = std::holds_alternative<InfiniteWell>(config.axial) ? 1 : 0;
  const int n_levels = config.ranges.n_axial_max - out.level_offset + 1;
  const Grid1D grid = default_axial_grid(config.axial, config.oracle);
  out.levels = solve_axial(config.axial, grid, n_levels, config.oracle.axial_tol);
  return out;
}

LineVerdict worse(LineVerdict a, LineVerdict b)
{
  auto rank = [](LineVerdict v) {
    switch (v) {
      case LineVerdict::unexpected: return 3;
      case LineVerdict::documented: return 2;
      case LineVerdict::agree: return 1;
      default: return 0;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

double rel_diff(double got, double want)
{
  return std::abs(got - want) / std::max(std::abs(want), 1e-12);
}

}  // namespace

SpectrumReport run_verify(const RunConfig& config)
{
  SpectrumReport report = run_spectrum(config);
  if (!config.oracle_enabled) {
    return report;  // degrades to the plain spectrum, oracle columns empty
  }
  if (!(config.mass.b > 0.0)) {
    throw ConfigError("mass.b", "verification requires b > 0 (monotone self-consistent solve)");
  }
  report.verified = true;
  report.verdicts.assign(report.lines.size(), LineVerdict::not_compared);

  const bool is_well = std::holds_alternative<InfiniteWell>(config.axial);
  const bool is_morse = std::holds_alternative<MorseAxial>(config.axial);
  const AxialOracle axial = solve_axial_levels(config);

  // energy solves are shared between the two Coulomb branches of a tuple
  std::map<std::tuple<int, int, int>, std::optional<double>> energy_cache;

  for (std::size_t i = 0; i < report.lines.size(); ++i) {
    SpectrumLine& line = report.lines[i];
    LineVerdict verdict = LineVerdict::not_compared;

    const EigenResult& ax = axial.levels.at(line.qn.n_axial - axial.level_offset);
    line.kz2_oracle = ax.value;
    line.residual_kz2 = rel_diff(ax.value, line.kz2_analytic);

    if (!line.constraint_ok || !line.axial_ok) {
      report.verdicts[i] = LineVerdict::constraint;
      report.summary.constraint_failures++;
      continue;
    }

    // separation constant check
    if (!ax.converged) {
      line.add_flag("axial_not_converged");
      report.summary.not_converged++;
    }
    if (is_morse) {
      // the closed-form family tabulates the linear constant; the ODE value
      // is the quadratic Morse energy. Both are reported; the difference is a
      // documented convention, provided the oracle matches the reference form.
      const auto& mz = std::get<MorseAxial>(config.axial);
      const double reference =
          morse_reference_energy(mz.D, mz.epsilon, line.qn.n_axial);
      if (rel_diff(ax.value, reference) <= config.oracle.loose_axial_tol) {
        verdict = worse(verdict, LineVerdict::documented);
        line.add_flag("documented_morse_kz2");
      } else {
        verdict = worse(verdict, LineVerdict::unexpected);
        line.add_flag("morse_oracle_off_reference");
      }
    } else {
      const double tol =
          is_well ? config.oracle.axial_tol : config.oracle.loose_axial_tol;
      verdict = worse(verdict, *line.residual_kz2 <= tol ? LineVerdict::agree
                                                         : LineVerdict::unexpected);
    }

    // energy check through the self-consistent radial solve
    const EllTilde ell =
        ell_tilde(config.family == Family::harmonic ? 0.5 : -1.0, line.qn.m, config.ordering);
    const bool near_critical = ell.real() && *ell.value < 0.5;
    if (near_critical) {
      line.add_flag("near_critical_ell");
    }
    const double energy_tol = config.verify_energy_tol * (near_critical ? 10.0 : 1.0);

    double kz2_eff = ax.value;
    bool solvable = true;
    if (config.family == Family::harmonic && kz2_eff > 0.0) {
      // the closed-form energy is even in kz2; the radial operator only has
      // eigenvalues for the non-positive sign
      kz2_eff = -kz2_eff;
      line.add_flag("kz2_sign_flipped");
    }
    if (config.family == Family::coulomb && !(kz2_eff > 0.0)) {
      line.add_flag("coulomb_kz_imaginary");
      solvable = false;
    }

    const auto key = std::make_tuple(line.qn.n_rho, line.qn.m, line.qn.n_axial);
    std::optional<double> e_oracle;
    if (auto it = energy_cache.find(key); it != energy_cache.end()) {
      e_oracle = it->second;
    } else if (solvable) {
      try {
        e_oracle = solve_selfconsistent_E(config.family, config.mass, config.radial,
                                          config.ordering, line.qn.m, line.qn.n_rho, kz2_eff,
                                          std::nullopt, config.oracle);
      } catch (const OracleError& e) {
        line.add_flag(std::string("oracle_error: ") + e.what());
        report.summary.not_converged++;
      }
      energy_cache.emplace(key, e_oracle);
    }

    if (e_oracle.has_value() && line.e_analytic.has_value()) {
      line.e_oracle = e_oracle;
      line.residual_e = std::abs(*e_oracle - *line.e_analytic);
      if (*line.residual_e <= energy_tol) {
        verdict = worse(verdict, LineVerdict::agree);
      } else {
        // check the oracle against the consistent closed form before calling
        // the mismatch unexpected
        std::optional<double> consistent;
        if (config.family == Family::harmonic) {
          const auto& hr = std::get<HarmonicRadial>(config.radial);
          consistent = harmonic_energy(hr.a, config.mass.b, line.qn.m, line.qn.n_rho, ax.value,
                                       config.ordering);
          if (is_morse && consistent && std::abs(*e_oracle - *consistent) <= energy_tol) {
            // the mismatch traces back to the linear Morse constant alone
            verdict = worse(verdict, LineVerdict::documented);
            line.add_flag("documented_morse_kz2");
          } else {
            verdict = worse(verdict, LineVerdict::unexpected);
          }
        } else {
          // ODE-consistent Coulombic level: denominator n_rho + l~ + 1/2
          const auto& cr = std::get<CoulombRadial>(config.radial);
          const double b_tilde = 0.5 * config.mass.b;
          const double kz = std::sqrt(ax.value);
          consistent =
              (kz * (line.qn.n_rho + *ell.value + 0.5) - cr.A_tilde) / b_tilde;
          if (std::abs(*e_oracle - *consistent) <= energy_tol * 10.0) {
            verdict = worse(verdict, LineVerdict::documented);
            line.add_flag("documented_coulomb_denominator");
          } else {
            verdict = worse(verdict, LineVerdict::unexpected);
          }
        }
      }
    }

    report.verdicts[i] = verdict;
    switch (verdict) {
      case LineVerdict::agree: report.summary.agree++; break;
      case LineVerdict::documented: report.summary.documented++; break;
      case LineVerdict::unexpected: report.summary.unexpected++; break;
      case LineVerdict::constraint: report.summary.constraint_failures++; break;
      case LineVerdict::not_compared: report.summary.not_compared++; break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// identity-check

IdentityCheckResult run_identity_check(int potential_samples)
{
  IdentityCheckResult result;
  result.report = identity_residuals(potential_samples);
  result.within_contract = result.report.potential_composition <= result.potential_contract &&
                           result.report.axial_substitution <= result.substitution_contract &&
                           result.report.azimuthal_substitution <= result.substitution_contract &&
                           result.report.radial_substitution <= result.substitution_contract;
  return result;
}

void write_identity_report(std::ostream& os, const IdentityCheckResult& result,
                           OutputFormat format)
{
  if (format == OutputFormat::json) {
    json j;
    j["potential_composition"] = result.report.potential_composition;
    j["axial_substitution"] = result.report.axial_substitution;
    j["azimuthal_substitution"] = result.report.azimuthal_substitution;
    j["radial_substitution"] = result.report.radial_substitution;
    j["potential_contract"] = result.potential_contract;
    j["substitution_contract"] = result.substitution_contract;
    j["within_contract"] = result.within_contract;
    os << j.dump(2) << '\n';
    return;
  }
  const char sep = format == OutputFormat::csv ? ',' : ' ';
  if (format == OutputFormat::csv) {
    os << "identity,residual,contract,ok\n";
  } else {
    os << "identity                 residual        contract  ok\n";
  }
  auto row = [&](const char* name, double value, double contract) {
    if (format == OutputFormat::csv) {
      os << name << sep << format_double(value) << sep << format_double(contract) << sep
         << (value <= contract ? "true" : "false") << '\n';
    } else {
      std::string n = name;
      n.resize(24, ' ');
      std::string v = format_double(value);
      v.resize(15, ' ');
      std::string c = format_double(contract);
      c.resize(9, ' ');
      os << n << ' ' << v << ' ' << c << ' ' << (value <= contract ? "ok" : "VIOLATED") << '\n';
    }
  };
  row("potential_composition", result.report.potential_composition, result.potential_contract);
  row("axial_substitution", result.report.axial_substitution, result.substitution_contract);
  row("azimuthal_substitution", result.report.azimuthal_substitution,
      result.substitution_contract);
  row("radial_substitution", result.report.radial_substitution, result.substitution_contract);
}

// ---------------------------------------------------------------------------
// sweep

namespace {

struct SweepCell {
  std::optional<std::string> ordering;
  std::optional<int> m_value;
  std::vector<std::pair<std::string, double>> overrides;  // dotted path -> value
};

json& descend(json& root, const std::string& dotted)
{
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (dot == std::string::npos) {
      return (*node)[key];
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

SweepSpec parse_sweep_spec(const json& j)
{
  SweepSpec spec;
  if (!j.contains("sweep")) {
    throw ConfigError("sweep", "config has no sweep section");
  }
  const json& js = j.at("sweep");
  if (js.contains("mode")) {
    const std::string mode = js.at("mode").get<std::string>();
    if (mode == "constraint") {
      spec.mode = SweepSpec::Mode::constraint;
    } else if (mode == "spectrum") {
      spec.mode = SweepSpec::Mode::spectrum;
    } else if (mode == "verify") {
      spec.mode = SweepSpec::Mode::verify;
    } else {
      throw ConfigError("sweep.mode", "expected constraint, spectrum or verify");
    }
  }
  if (js.contains("orderings")) {
    for (const auto& name : js.at("orderings")) {
      spec.orderings.push_back(name.get<std::string>());
    }
  }
  if (js.contains("m")) {
    for (const auto& m : js.at("m")) {
      spec.m_values.push_back(m.get<int>());
    }
  }
  if (js.contains("overrides")) {
    for (const auto& [path, values] : js.at("overrides").items()) {
      std::vector<double> list;
      for (const auto& v : values) {
        list.push_back(v.get<double>());
      }
      if (list.empty()) {
        throw ConfigError("sweep.overrides." + path, "empty value list");
      }
      spec.overrides.emplace_back(path, std::move(list));
    }
  }
  return spec;
}

std::vector<SweepCell> enumerate_cells(const SweepSpec& spec)
{
  std::vector<SweepCell> cells{SweepCell{}};
  if (!spec.orderings.empty()) {
    std::vector<SweepCell> next;
    for (const SweepCell& cell : cells) {
      for (const std::string& name : spec.orderings) {
        SweepCell c = cell;
        c.ordering = name;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  if (!spec.m_values.empty()) {
    std::vector<SweepCell> next;
    for (const SweepCell& cell : cells) {
      for (int m : spec.m_values) {
        SweepCell c = cell;
        c.m_value = m;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  for (const auto& [path, values] : spec.overrides) {
    std::vector<SweepCell> next;
    for (const SweepCell& cell : cells) {
      for (double v : values) {
        SweepCell c = cell;
        c.overrides.emplace_back(path, v);
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

struct CellOutcome {
  std::vector<std::vector<std::string>> rows;
  std::string error;
  int exit_code = 0;
};

std::vector<std::string> cell_prefix(int index, const SweepSpec& spec, const SweepCell& cell)
{
  std::vector<std::string> prefix{std::to_string(index)};
  if (!spec.orderings.empty()) {
    prefix.push_back(cell.ordering.value_or(""));
  }
  if (!spec.m_values.empty()) {
    prefix.push_back(cell.m_value ? std::to_string(*cell.m_value) : "");
  }
  for (const auto& [path, value] : cell.overrides) {
    (void)path;
    prefix.push_back(format_double(value));
  }
  return prefix;
}

CellOutcome run_cell(const json& base, const SweepSpec& spec, const SweepCell& cell, int index)
{
  CellOutcome outcome;
  try {
    if (spec.mode == SweepSpec::Mode::constraint) {
      const std::string name = cell.ordering.value_or("");
      const auto set = ordering_from_name(name);
      if (!set) {
        throw ConfigError("sweep.orderings", "unknown ordering set '" + name + "'");
      }
      const AmbiguityParameters p = named_ordering(*set);
      const int m = cell.m_value.value_or(0);
      std::vector<std::string> row = cell_prefix(index, spec, cell);
      row.push_back(to_string(p.alpha));
      row.push_back(to_string(p.beta));
      row.push_back(to_string(p.gamma));
      row.push_back(to_string(zeta(p)));
      row.push_back(to_string(zeta_minus_beta(p)));
      row.push_back(reality_ok_harmonic(p, m) ? "true" : "false");
      row.push_back(reality_ok_coulomb(p, m) ? "true" : "false");
      row.push_back("ok");
      outcome.rows.push_back(std::move(row));
      return outcome;
    }

    json cfg = base;
    cfg.erase("sweep");
    if (cell.ordering) {
      cfg["ordering"] = json{{"named", *cell.ordering}};
    }
    if (cell.m_value) {
      cfg["ranges"]["m"] = json::array({*cell.m_value, *cell.m_value});
    }
    for (const auto& [path, value] : cell.overrides) {
      descend(cfg, path) = value;
    }
    const RunConfig config = parse_config(cfg.dump());
    const SpectrumReport report =
        spec.mode == SweepSpec::Mode::verify ? run_verify(config) : run_spectrum(config);
    outcome.exit_code = report.verified ? report.summary.exit_code() : 0;
    for (const SpectrumLine& line : report.lines) {
      std::vector<std::string> row = cell_prefix(index, spec, cell);
      row.push_back(std::to_string(line.qn.n_rho));
      row.push_back(std::to_string(line.qn.m));
      row.push_back(std::to_string(line.qn.n_axial));
      row.push_back(branch_name(line.branch));
      row.push_back(format_double(line.kz2_analytic));
      row.push_back(line.kz2_oracle ? format_double(*line.kz2_oracle) : "");
      row.push_back(line.e_analytic ? format_double(*line.e_analytic) : "complex");
      row.push_back(line.e_oracle ? format_double(*line.e_oracle) : "");
      row.push_back(line.residual_kz2 ? format_double(*line.residual_kz2) : "");
      row.push_back(line.residual_e ? format_double(*line.residual_e) : "");
      row.push_back(line.constraint_ok ? "true" : "false");
      std::string flags;
      for (const auto& f : line.flags) {
        if (!flags.empty()) flags += ';';
        flags += f;
      }
      row.push_back(flags);
      row.push_back("ok");
      outcome.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    outcome.error = e.what();
    outcome.exit_code = 1;
    std::vector<std::string> row = cell_prefix(index, spec, cell);
    row.push_back(std::string("error: ") + e.what());
    outcome.rows.push_back(std::move(row));
  }
  return outcome;
}

}  // namespace

SweepTable run_sweep(const std::string& config_json_text, int workers)
{
  json base;
  try {
    base = json::parse(config_json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  const SweepSpec spec = parse_sweep_spec(base);
  const std::vector<SweepCell> cells = enumerate_cells(spec);

  SweepTable table;
  table.cells = static_cast<int>(cells.size());
  table.header = {"cell"};
  if (!spec.orderings.empty()) {
    table.header.push_back("ordering");
  }
  if (!spec.m_values.empty()) {
    table.header.push_back("m_swept");
  }
  for (const auto& [path, values] : spec.overrides) {
    (void)values;
    table.header.push_back(path);
  }
  if (spec.mode == SweepSpec::Mode::constraint) {
    for (const char* c : {"alpha", "beta", "gamma", "zeta", "zeta_minus_beta", "harmonic_ok",
                          "coulomb_ok", "status"}) {
      table.header.push_back(c);
    }
  } else {
    for (const char* c : {"n_rho", "m", "n_axial", "branch", "kz2_analytic", "kz2_oracle",
                          "E_analytic", "E_oracle", "residual_kz2", "residual_E", "constraint_ok",
                          "flags", "status"}) {
      table.header.push_back(c);
    }
  }

  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) {
        return;
      }
      outcomes[i] = run_cell(base, spec, cells[i], static_cast<int>(i));
    }
  };
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  for (CellOutcome& outcome : outcomes) {
    if (!outcome.error.empty()) {
      table.failed_cells++;
    }
    table.worst_exit = std::max({table.worst_exit, outcome.exit_code});
    for (auto& row : outcome.rows) {
      row.resize(table.header.size());  // pad error rows to full width
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void write_sweep_table(std::ostream& os, const SweepTable& table, OutputFormat format)
{
  if (format == OutputFormat::json) {
    json j;
    j["header"] = table.header;
    j["rows"] = json::array();
    for (const auto& row : table.rows) {
      j["rows"].push_back(row);
    }
    j["cells"] = table.cells;
    j["failed_cells"] = table.failed_cells;
    os << j.dump(2) << '\n';
    return;
  }
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      os << (i ? "," : "") << csv_escape(table.header[i]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << csv_escape(row[i]);
      }
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> widths(table.header.size());
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    widths[i] = table.header[i].size();
  }
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string padded = row[i];
      padded.resize(widths[i] + 2, ' ');
      os << padded;
    }
    os << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) {
    emit(row);
  }
}

}  // namespace pdmspec
