#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "pdmspec/commands.hpp"
#include "pdmspec/oracle.hpp"

namespace py = pybind11;
using json = nlohmann::ordered_json;

namespace {

pdmspec::AmbiguityParameters make_params(const std::string& alpha, const std::string& beta,
                                         const std::string& gamma)
{
  return {pdmspec::parse_rational(alpha), pdmspec::parse_rational(beta),
          pdmspec::parse_rational(gamma)};
}

py::object json_to_py(const json& j)
{
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list list;
      for (const auto& item : j) {
        list.append(json_to_py(item));
      }
      return list;
    }
    case json::value_t::object: {
      py::dict dict;
      for (const auto& [key, value] : j.items()) {
        dict[py::str(key)] = json_to_py(value);
      }
      return dict;
    }
    default: return py::none();
  }
}

json py_to_json(const py::handle& obj)
{
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json j = json::object();
    for (const auto& item : obj.cast<py::dict>()) {
      j[item.first.cast<std::string>()] = py_to_json(item.second);
    }
    return j;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    json j = json::array();
    for (const auto& item : obj.cast<py::sequence>()) {
      j.push_back(py_to_json(item));
    }
    return j;
  }
  throw py::type_error("unsupported config value type");
}

pdmspec::RunConfig config_from_py(const py::dict& config)
{
  return pdmspec::parse_config(py_to_json(config).dump());
}

py::dict line_to_dict(const pdmspec::SpectrumLine& line)
{
  py::dict d;
  d["n_rho"] = line.qn.n_rho;
  d["m"] = line.qn.m;
  d["n_axial"] = line.qn.n_axial;
  d["branch"] = pdmspec::branch_name(line.branch);
  d["kz2_analytic"] = line.kz2_analytic;
  d["kz2_oracle"] = line.kz2_oracle ? py::object(py::float_(*line.kz2_oracle)) : py::none();
  d["E_analytic"] = line.e_analytic ? py::object(py::float_(*line.e_analytic)) : py::none();
  d["E_oracle"] = line.e_oracle ? py::object(py::float_(*line.e_oracle)) : py::none();
  d["residual_kz2"] = line.residual_kz2 ? py::object(py::float_(*line.residual_kz2)) : py::none();
  d["residual_E"] = line.residual_e ? py::object(py::float_(*line.residual_e)) : py::none();
  d["constraint_ok"] = line.constraint_ok;
  d["flags"] = line.flags;
  return d;
}

py::dict report_to_dict(const pdmspec::SpectrumReport& report)
{
  py::list lines;
  for (std::size_t i = 0; i < report.lines.size(); ++i) {
    py::dict d = line_to_dict(report.lines[i]);
    if (i < report.verdicts.size()) {
      d["verdict"] = pdmspec::line_verdict_name(report.verdicts[i]);
    }
    lines.append(d);
  }
  py::dict out;
  out["lines"] = lines;
  if (report.verified) {
    py::dict s;
    s["agree"] = report.summary.agree;
    s["documented"] = report.summary.documented;
    s["unexpected"] = report.summary.unexpected;
    s["constraint_failures"] = report.summary.constraint_failures;
    s["not_compared"] = report.summary.not_compared;
    s["not_converged"] = report.summary.not_converged;
    s["exit_code"] = report.summary.exit_code();
    out["summary"] = s;
  }
  return out;
}

pdmspec::AxialPotential axial_from_py(const py::dict& axial)
{
  const json j = py_to_json(axial);
  const std::string type = j.at("type").get<std::string>();
  if (type == "well") return pdmspec::InfiniteWell{j.at("L").get<double>()};
  if (type == "morse") {
    return pdmspec::MorseAxial{j.at("D").get<double>(), j.at("epsilon").get<double>()};
  }
  if (type == "rosen_morse") {
    return pdmspec::RosenMorseTrig{j.at("U0").get<double>(), j.at("d").get<double>()};
  }
  throw py::value_error("axial type must be well, morse or rosen_morse");
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "spectra of radial power-law position-dependent-mass models, with "
            "finite-difference verification";

  // ordering-parameter algebra (exact rationals passed as "p/q" strings)
  m.def("named_ordering", [](const std::string& name) {
    const auto set = pdmspec::ordering_from_name(name);
    if (!set) {
      throw py::value_error("unknown ordering set '" + name + "'");
    }
    const pdmspec::AmbiguityParameters p = pdmspec::named_ordering(*set);
    return py::make_tuple(pdmspec::to_string(p.alpha), pdmspec::to_string(p.beta),
                          pdmspec::to_string(p.gamma));
  });
  m.def("ordering_sets", [] {
    std::vector<std::string> names;
    for (pdmspec::OrderingSet set : pdmspec::kAllOrderingSets) {
      names.emplace_back(pdmspec::ordering_name(set));
    }
    return names;
  });
  m.def("zeta", [](const std::string& a, const std::string& b, const std::string& g) {
    return pdmspec::to_string(pdmspec::zeta(make_params(a, b, g)));
  });
  m.def("zeta_minus_beta", [](const std::string& a, const std::string& b, const std::string& g) {
    return pdmspec::to_string(pdmspec::zeta_minus_beta(make_params(a, b, g)));
  });
  m.def("reality_ok_harmonic",
        [](const std::string& a, const std::string& b, const std::string& g, int m) {
          return pdmspec::reality_ok_harmonic(make_params(a, b, g), m);
        });
  m.def("reality_ok_coulomb",
        [](const std::string& a, const std::string& b, const std::string& g, int m) {
          return pdmspec::reality_ok_coulomb(make_params(a, b, g), m);
        });
  m.def("ell_tilde",
        [](double upsilon, int m, const std::string& a, const std::string& b,
           const std::string& g) {
          const pdmspec::EllTilde e = pdmspec::ell_tilde(upsilon, m, make_params(a, b, g));
          py::dict d;
          d["radicand"] = e.radicand;
          d["value"] = e.value ? py::object(py::float_(*e.value)) : py::none();
          d["real"] = e.real();
          return d;
        });
  m.def("ell_tilde_rescaled_special",
        [](int m, const std::string& a, const std::string& b, const std::string& g,
           double energy) {
          return pdmspec::ell_tilde_rescaled_special(m, make_params(a, b, g), energy);
        });

  // closed-form separation constants and energies
  m.def("axial_well_kz2", &pdmspec::axial_well_kz2, py::arg("L"), py::arg("n_z"));
  m.def("axial_morse_kz2", [](double D, double epsilon, int n) {
    const pdmspec::MorseKz2 r = pdmspec::axial_morse_kz2(D, epsilon, n);
    return py::make_tuple(r.value, r.positive_ok);
  });
  m.def("morse_reference_energy", &pdmspec::morse_reference_energy, py::arg("D"),
        py::arg("epsilon"), py::arg("n"));
  m.def("rosen_morse_C", &pdmspec::rosen_morse_C, py::arg("U0"), py::arg("d"));
  m.def("axial_rosen_morse_kz2", &pdmspec::axial_rosen_morse_kz2, py::arg("U0"), py::arg("d"),
        py::arg("n_tilde_z"));
  m.def("harmonic_energy",
        [](double a, double b, int m, int n_rho, double kz2, const std::string& pa,
           const std::string& pb, const std::string& pg) -> py::object {
          const auto e = pdmspec::harmonic_energy(a, b, m, n_rho, kz2, make_params(pa, pb, pg));
          return e ? py::object(py::float_(*e)) : py::none();
        });
  m.def("harmonic_kz2_relation", &pdmspec::harmonic_kz2_relation, py::arg("a"), py::arg("b"),
        py::arg("energy"), py::arg("n_rho"), py::arg("ell"));
  m.def("coulomb_energy",
        [](double A_tilde, double b, int m, int n_rho, double kz, const std::string& pa,
           const std::string& pb, const std::string& pg, const std::string& branch) -> py::object {
          pdmspec::Branch br;
          if (branch == "plus") {
            br = pdmspec::Branch::plus;
          } else if (branch == "minus") {
            br = pdmspec::Branch::minus;
          } else {
            throw py::value_error("branch must be 'plus' or 'minus'");
          }
          const auto e =
              pdmspec::coulomb_energy(A_tilde, b, m, n_rho, kz, make_params(pa, pb, pg), br);
          return e ? py::object(py::float_(*e)) : py::none();
        });

  // mass profile and separability
  m.def("mass_at", [](double upsilon, double b, double rho) {
    return pdmspec::mass_at(pdmspec::MassProfile(upsilon, b), rho);
  });
  m.def("classify_separability", [](double upsilon, bool f_unit, bool k_unit, bool g_unit) {
    return pdmspec::separability_case_name(
        pdmspec::classify_separability(upsilon, f_unit, k_unit, g_unit));
  });

  // finite-difference oracle
  m.def(
      "solve_axial",
      [](const py::dict& axial, int grid_points, int levels, double tol) {
        const pdmspec::AxialPotential vz = axial_from_py(axial);
        pdmspec::OracleSettings settings;
        settings.n_points = grid_points;
        const pdmspec::Grid1D grid = pdmspec::default_axial_grid(vz, settings);
        py::list out;
        for (const pdmspec::EigenResult& r : pdmspec::solve_axial(vz, grid, levels, tol)) {
          py::dict d;
          d["level"] = r.level_index;
          d["value"] = r.value;
          d["convergence_estimate"] = r.convergence_estimate;
          d["converged"] = r.converged;
          out.append(d);
        }
        return out;
      },
      py::arg("axial"), py::arg("grid_points") = 2000, py::arg("levels") = 3,
      py::arg("tol") = 1e-6);
  m.def(
      "solve_radial_linear",
      [](double ell, const py::dict& config, double e_fixed, int grid_points, int levels,
         double rho_max, double tol) {
        const pdmspec::RunConfig base = config_from_py(config);
        pdmspec::OracleSettings settings = base.oracle;
        settings.n_points = grid_points;
        if (rho_max > 0.0) {
          settings.rho_max = rho_max;
        }
        const pdmspec::Grid1D grid =
            pdmspec::default_radial_grid(ell, base.radial, base.mass, e_fixed, levels, settings);
        py::list out;
        for (const pdmspec::EigenResult& r :
             pdmspec::solve_radial_linear(ell, base.radial, base.mass, e_fixed, grid, levels,
                                          tol)) {
          py::dict d;
          d["level"] = r.level_index;
          d["value"] = r.value;
          d["convergence_estimate"] = r.convergence_estimate;
          d["converged"] = r.converged;
          out.append(d);
        }
        return out;
      },
      py::arg("ell"), py::arg("config"), py::arg("e_fixed") = 0.0, py::arg("grid_points") = 2000,
      py::arg("levels") = 3, py::arg("rho_max") = 0.0, py::arg("tol") = 1e-5);
  m.def(
      "solve_selfconsistent_energy",
      [](const py::dict& config, int m, int n_rho, double kz2, int grid_points) {
        pdmspec::RunConfig base = config_from_py(config);
        if (grid_points > 0) {
          base.oracle.n_points = grid_points;
        }
        return pdmspec::solve_selfconsistent_E(base.family, base.mass, base.radial, base.ordering,
                                               m, n_rho, kz2, std::nullopt, base.oracle);
      },
      py::arg("config"), py::arg("m"), py::arg("n_rho"), py::arg("kz2"),
      py::arg("grid_points") = 0);

  // pipelines
  m.def("run_spectrum",
        [](const py::dict& config) { return report_to_dict(pdmspec::run_spectrum(config_from_py(config))); });
  m.def("run_verify",
        [](const py::dict& config) { return report_to_dict(pdmspec::run_verify(config_from_py(config))); });
  m.def(
      "identity_residuals",
      [](int samples) {
        const pdmspec::IdentityReport r = pdmspec::identity_residuals(samples);
        py::dict d;
        d["potential_composition"] = r.potential_composition;
        d["axial_substitution"] = r.axial_substitution;
        d["azimuthal_substitution"] = r.azimuthal_substitution;
        d["radial_substitution"] = r.radial_substitution;
        return d;
      },
      py::arg("samples") = 2000);

  m.attr("__version__") = "0.1.0";
}
