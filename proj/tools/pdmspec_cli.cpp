// Command-line front end: closed-form spectra for radial power-law
// position-dependent-mass models, with finite-difference verification.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "pdmspec/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;

struct OutputTarget {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  static OutputTarget open(const std::string& path)
  {
    OutputTarget target;
    if (!path.empty()) {
      target.file = std::make_unique<std::ofstream>(path);
      if (!*target.file) {
        throw pdmspec::ConfigError("", "cannot open output file '" + path + "'");
      }
      target.stream = target.file.get();
    }
    return target;
  }
};

pdmspec::RunConfig load_run_config(const std::string& config_path, int grid_points, int levels,
                                   double tolerance, const std::string& format,
                                   const std::string& out)
{
  if (config_path.empty()) {
    throw pdmspec::ConfigError("", "--config is required");
  }
  pdmspec::RunConfig config = pdmspec::load_config(config_path);
  if (grid_points > 0) {
    if (grid_points < 16) {
      throw pdmspec::ConfigError("--grid-points", "must be >= 16");
    }
    config.oracle.n_points = grid_points;
  }
  if (levels > 0) {
    const int floor = std::holds_alternative<pdmspec::InfiniteWell>(config.axial) ? 1 : 0;
    config.ranges.n_axial_min = floor;
    config.ranges.n_axial_max = floor + levels - 1;
  }
  if (tolerance > 0.0) {
    config.verify_energy_tol = tolerance;
  }
  if (!format.empty()) {
    config.format = pdmspec::output_format_from_name(format);
  }
  if (!out.empty()) {
    config.out_path = out;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"position-dependent-mass spectral toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  int grid_points = 0;
  int levels = 0;
  int workers = 4;
  double tolerance = 0.0;
  int m_max = 2;
  int samples = 10000;
  std::vector<std::string> ordering_names;
  std::vector<std::string> explicit_triples;

  auto* amb = app.add_subcommand("ambiguity-table",
                                 "exact ordering-parameter table with reality flags");
  amb->add_option("--m-max", m_max, "largest magnetic quantum number (default 2)");
  amb->add_option("--ordering", ordering_names, "named set (repeatable; default: all five)");
  amb->add_option("--explicit", explicit_triples,
                  "explicit alpha,beta,gamma triple of exact rationals, e.g. -1/3,-1/3,-1/3");
  amb->add_option("--format", format, "csv, json or table (default table)");
  amb->add_option("--out", out_path, "write the table to this file");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum for a config");
  auto* verify = app.add_subcommand("verify", "spectrum plus finite-difference verification");
  for (CLI::App* cmd : {spectrum, verify}) {
    cmd->add_option("--config", config_path, "config file (JSON)")->required();
    cmd->add_option("--out", out_path, "write records to this file");
    cmd->add_option("--format", format, "csv, json or table");
    cmd->add_option("--grid-points", grid_points, "oracle grid points (interior)");
    cmd->add_option("--levels", levels, "take the first K axial levels");
    cmd->add_option("--tolerance", tolerance, "energy agreement tolerance (absolute)");
  }

  auto* identity = app.add_subcommand("identity-check",
                                      "residuals of the derivation identities");
  identity->add_option("--samples", samples, "sample points per composed potential");
  identity->add_option("--format", format, "csv, json or table (default table)");
  identity->add_option("--out", out_path, "write the report to this file");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep described in the config");
  sweep->add_option("--config", config_path, "config file with a sweep section")->required();
  sweep->add_option("--workers", workers, "bounded worker count (default 4)");
  sweep->add_option("--out", out_path, "write the aggregated table to this file");
  sweep->add_option("--format", format, "csv, json or table (default csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (amb->parsed()) {
      std::vector<std::pair<std::string, pdmspec::AmbiguityParameters>> orderings;
      if (ordering_names.empty() && explicit_triples.empty()) {
        for (pdmspec::OrderingSet set : pdmspec::kAllOrderingSets) {
          orderings.emplace_back(pdmspec::ordering_name(set), pdmspec::named_ordering(set));
        }
      }
      for (const std::string& name : ordering_names) {
        const auto set = pdmspec::ordering_from_name(name);
        if (!set) {
          throw pdmspec::ConfigError("--ordering", "unknown ordering set '" + name + "'");
        }
        orderings.emplace_back(name, pdmspec::named_ordering(*set));
      }
      for (const std::string& triple : explicit_triples) {
        const auto c1 = triple.find(',');
        const auto c2 = triple.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
          throw pdmspec::ConfigError("--explicit", "expected alpha,beta,gamma");
        }
        try {
          pdmspec::AmbiguityParameters p(pdmspec::parse_rational(triple.substr(0, c1)),
                                         pdmspec::parse_rational(triple.substr(c1 + 1, c2 - c1 - 1)),
                                         pdmspec::parse_rational(triple.substr(c2 + 1)));
          orderings.emplace_back("(" + triple + ")", p);
        } catch (const std::invalid_argument& e) {
          throw pdmspec::ConfigError("--explicit", e.what());
        }
      }
      const auto rows = pdmspec::ambiguity_table(orderings, m_max);
      const auto fmt = format.empty() ? pdmspec::OutputFormat::table
                                      : pdmspec::output_format_from_name(format);
      OutputTarget target = OutputTarget::open(out_path);
      pdmspec::write_ambiguity_table(*target.stream, rows, fmt);
      return kExitOk;
    }

    if (spectrum->parsed() || verify->parsed()) {
      const pdmspec::RunConfig config =
          load_run_config(config_path, grid_points, levels, tolerance, format, out_path);
      const pdmspec::SpectrumReport report =
          verify->parsed() ? pdmspec::run_verify(config) : pdmspec::run_spectrum(config);
      OutputTarget target = OutputTarget::open(config.out_path);
      pdmspec::write_report(*target.stream, report, config.format);
      std::cerr << pdmspec::summary_note(report) << '\n';
      return report.verified ? report.summary.exit_code() : kExitOk;
    }

    if (identity->parsed()) {
      if (samples < 1) {
        throw pdmspec::ConfigError("--samples", "must be >= 1");
      }
      const pdmspec::IdentityCheckResult result = pdmspec::run_identity_check(samples);
      const auto fmt = format.empty() ? pdmspec::OutputFormat::table
                                      : pdmspec::output_format_from_name(format);
      OutputTarget target = OutputTarget::open(out_path);
      pdmspec::write_identity_report(*target.stream, result, fmt);
      return result.within_contract ? kExitOk : kExitMismatch;
    }

    if (sweep->parsed()) {
      if (workers < 1) {
        throw pdmspec::ConfigError("--workers", "must be >= 1");
      }
      std::ifstream in(config_path);
      if (!in) {
        throw pdmspec::ConfigError("", "cannot open config file '" + config_path + "'");
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      const pdmspec::SweepTable table = pdmspec::run_sweep(buffer.str(), workers);
      const auto fmt =
          format.empty() ? pdmspec::OutputFormat::csv : pdmspec::output_format_from_name(format);
      OutputTarget target = OutputTarget::open(out_path);
      pdmspec::write_sweep_table(*target.stream, table, fmt);
      std::cerr << "sweep: " << table.cells << " cells, " << table.failed_cells << " failed\n";
      return table.worst_exit;
    }
  } catch (const pdmspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitOk;
}
