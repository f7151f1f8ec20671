// contactmech: simulate configured contact systems, run verification suites,
// and check the ideal-gas example. Exit codes: 0 pass, 1 usage or config
// error, 2 numerical failure (blow-up or failing reports).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "contact/diff.hpp"
#include "contact/dynamics.hpp"
#include "contact/expr.hpp"
#include "contact/geometry.hpp"
#include "contact/report.hpp"
#include "contact/suites.hpp"
#include "contact/thermo.hpp"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
T field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("field '" + key + "' is missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + key + "' has the wrong type");
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("CONTACT_MECH_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

std::vector<std::string> ham_coords(int n) {
  if (n == 1) return {"q", "p", "z"};
  std::vector<std::string> c;
  for (int i = 0; i < n; ++i) c.push_back("q" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) c.push_back("p" + std::to_string(i + 1));
  c.push_back("z");
  return c;
}

std::vector<std::string> lag_coords(int n) {
  if (n == 1) return {"q", "qdot", "z"};
  std::vector<std::string> c;
  for (int i = 0; i < n; ++i) c.push_back("q" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) c.push_back("qdot" + std::to_string(i + 1));
  c.push_back("z");
  return c;
}

std::vector<std::pair<std::string, contact::Monitor>> hamiltonian_monitors(
    const contact::HamiltonianSystem& sys, const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, contact::Monitor>> out;
  for (const std::string& name : names) {
    if (name == "hamiltonian") {
      out.emplace_back("H", [sys](double, std::span<const double> y) {
        return (*sys.H)(y);
      });
    } else if (name == "conformal") {
      out.emplace_back("conformal", [sys](double, std::span<const double> y) {
        return contact::contact_hamiltonian_field(sys, contact::unflatten_contact(y))
            .conformal;
      });
    } else if (name == "dissipation") {
      out.emplace_back("dissipation", [sys](double, std::span<const double> y) {
        contact::ContactPoint x = contact::unflatten_contact(y);
        contact::FieldValue X = contact::contact_hamiltonian_field(sys, x);
        std::vector<double> g = contact::gradient(*sys.H, y);
        int n = sys.n;
        double rate = 0.0;
        for (int i = 0; i < n; ++i)
          rate += g[i] * X.lift.qdot[i] + g[n + i] * X.lift.pdot[i];
        rate += g[2 * n] * X.lift.zdot;
        double h = (*sys.H)(y);
        return std::abs(rate + X.conformal * h) / (1.0 + std::abs(h));
      });
    } else {
      throw ConfigError("field 'monitors': unknown monitor '" + name + "'");
    }
  }
  return out;
}

int write_outputs_and_finish(const contact::Trajectory& traj, const json& cfg) {
  std::string csv = field_or<std::string>(cfg, "csv", "");
  std::string js = field_or<std::string>(cfg, "json", "");
  if (!csv.empty()) contact::write_csv(traj, csv);
  if (!js.empty()) contact::write_json(traj, js);
  if (traj.blew_up) {
    std::cerr << "error: trajectory left the finite range (blow-up); wrote "
              << traj.states.size() << " samples\n";
    return 2;
  }
  return 0;
}

int run_simulate(const std::string& path) {
  json cfg;
  {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot read config '" << path << "'\n";
      return 1;
    }
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
      return 1;
    }
  }

  try {
    if (field<int>(cfg, "schema") != 1)
      throw ConfigError("field 'schema': only schema 1 is supported");
    std::string kind = field<std::string>(cfg, "kind");
    int n = field_or(cfg, "n", 1);
    if (n <= 0) throw ConfigError("field 'n': must be positive");
    std::map<std::string, double> constants =
        field_or<std::map<std::string, double>>(cfg, "constants", {});
    std::vector<double> t_span = field<std::vector<double>>(cfg, "t_span");
    if (t_span.size() != 2) throw ConfigError("field 't_span': expected [t0, t1]");
    double step = field<double>(cfg, "step");
    if (!(step > 0.0)) throw ConfigError("field 'step': must be positive");
    std::vector<double> initial = field<std::vector<double>>(cfg, "initial");
    std::vector<std::string> monitors =
        field_or<std::vector<std::string>>(cfg, "monitors", {});

    if (kind == "hamiltonian" || kind == "thermo") {
      contact::HamiltonianSystem sys;
      if (kind == "thermo") {
        contact::thermo::GasConstants gas{field_or(cfg, "U0", 1.0), field_or(cfg, "c", 1.5),
                                          field_or(cfg, "R", 1.0)};
        gas.validate();
        sys = contact::thermo::gas_system(gas);
        if (initial.size() == 3) {
          try {
            initial = contact::thermo::gas_state(gas, initial[0], initial[1], initial[2]);
          } catch (const contact::DomainError& e) {
            throw ConfigError(std::string("field 'initial': ") + e.what());
          }
        }
        if (initial.size() != 7)
          throw ConfigError("field 'initial': expected (S, V, N) or a full 7-slot state");
      } else {
        sys.n = n;
        sys.H = contact::parse_field(field<std::string>(cfg, "expression"), ham_coords(n),
                                     constants);
        if (static_cast<int>(initial.size()) != 2 * n + 1)
          throw ConfigError("field 'initial': expected 2n+1 slots");
      }
      std::string variant = field_or<std::string>(cfg, "variant", "contact");
      if (variant != "contact" && variant != "evolution")
        throw ConfigError("field 'variant': expected contact or evolution");
      contact::Trajectory traj = contact::simulate_hamiltonian(
          sys, contact::unflatten_contact(initial), t_span[0], t_span[1], step,
          variant == "evolution", hamiltonian_monitors(sys, monitors));
      return write_outputs_and_finish(traj, cfg);
    }

    if (kind == "lagrangian") {
      contact::LagrangianSystem sys;
      sys.n = n;
      sys.L = contact::parse_field(field<std::string>(cfg, "expression"), lag_coords(n),
                                   constants);
      if (static_cast<int>(initial.size()) != 2 * n + 1)
        throw ConfigError("field 'initial': expected 2n+1 slots");
      std::string variant = field_or<std::string>(cfg, "variant", "herglotz");
      if (variant != "herglotz" && variant != "evolution")
        throw ConfigError("field 'variant': expected herglotz or evolution");
      bool want_I = false, want_L = false;
      for (const std::string& name : monitors) {
        if (name == "conserved_I")
          want_I = true;
        else if (name == "lagrangian")
          want_L = true;
        else
          throw ConfigError("field 'monitors': unknown monitor '" + name + "'");
      }
      std::vector<std::pair<std::string, contact::Monitor>> mons;
      if (want_L) {
        contact::FieldPtr L = sys.L;
        mons.emplace_back("L", [L](double, std::span<const double> y) { return (*L)(y); });
      }
      contact::Trajectory traj = contact::simulate_lagrangian(
          sys, initial, t_span[0], t_span[1], step, variant == "evolution", mons);
      if (want_I) traj.diagnostics["I"] = contact::conserved_quantity(sys, traj);
      return write_outputs_and_finish(traj, cfg);
    }

    throw ConfigError("field 'kind': expected hamiltonian, lagrangian or thermo");
  } catch (const contact::ParseError& e) {
    std::cerr << "error: field 'expression': " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const contact::DomainError& e) {
    std::cerr << "error: evaluation left the field's domain: " << e.what() << "\n";
    return 2;
  } catch (const contact::SingularLagrangian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int emit_reports(const std::vector<contact::VerificationReport>& reports,
                 const std::string& out_path) {
  std::string text = contact::reports_json(reports);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
    out << text;
  }
  return contact::all_pass(reports) ? 0 : 2;
}

int run_verify(const std::string& which, int samples, std::uint64_t seed,
               const std::string& out_path) {
  if (auto s = env_seed()) seed = *s;
  try {
    return emit_reports(contact::verify_suite(which, samples, seed), out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_thermo(const std::string& check, const contact::thermo::GasConstants& gas,
               int samples, std::uint64_t seed, const std::string& out_path,
               const std::string& csv_path) {
  if (auto s = env_seed()) seed = *s;
  try {
    gas.validate();
    std::vector<contact::VerificationReport> reports;
    if (check == "potentials") {
      reports = contact::potentials_suite(gas, samples, seed);
    } else if (check == "legendre-chain") {
      reports = contact::legendre_chain_suite(gas, samples, seed);
    } else if (check == "flow") {
      reports = contact::gas_flow_suite(gas, samples, seed);
      if (!csv_path.empty()) {
        contact::HamiltonianSystem sys = contact::thermo::gas_system(gas);
        std::vector<double> x0 = contact::thermo::gas_state(gas, 1.0, 1.0, 1.0);
        contact::Trajectory traj = contact::simulate_hamiltonian(
            sys, contact::unflatten_contact(x0), 0.0, 1.0, 1e-3);
        contact::write_csv(traj, csv_path);
      }
    } else if (check == "morse") {
      reports = contact::gas_morse_suite(gas, samples, seed);
    } else {
      std::cerr << "error: unknown thermo check '" << check
                << "' (expected potentials, legendre-chain, flow or morse)\n";
      return 1;
    }
    return emit_reports(reports, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contact Hamiltonian / Herglotz dynamics toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* sim = app.add_subcommand("simulate", "integrate a configured system");
  sim->add_option("config", config_path, "JSON run configuration")->required();

  std::string suite;
  int verify_samples = 200;
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "maps, legendrian or all")->required();
  ver->add_option("--samples", verify_samples, "sample count per report");
  ver->add_option("--seed", verify_seed, "sampling seed");
  ver->add_option("--out", verify_out, "write the JSON report here instead of stdout");

  std::string check;
  contact::thermo::GasConstants gas;
  int thermo_samples = 100;
  std::uint64_t thermo_seed = 0;
  std::string thermo_out, thermo_csv;
  CLI::App* th = app.add_subcommand("thermo", "ideal-gas example checks");
  th->add_option("check", check, "potentials, legendre-chain, flow or morse")->required();
  th->add_option("--U0", gas.U0, "reference energy (positive)");
  th->add_option("--c", gas.c, "heat capacity constant (positive)");
  th->add_option("--R", gas.R, "gas constant (positive)");
  th->add_option("--samples", thermo_samples, "sample count per report");
  th->add_option("--seed", thermo_seed, "sampling seed");
  th->add_option("--out", thermo_out, "write the JSON report here instead of stdout");
  th->add_option("--csv", thermo_csv, "for flow: write the trajectory CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) return run_simulate(config_path);
  if (ver->parsed()) return run_verify(suite, verify_samples, verify_seed, verify_out);
  return run_thermo(check, gas, thermo_samples, thermo_seed, thermo_out, thermo_csv);
}
