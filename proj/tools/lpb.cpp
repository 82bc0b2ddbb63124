#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lpb/harness.hpp"

namespace {

using lpb::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

struct Overrides {
  std::vector<std::pair<std::string, std::string>> values;
  void add(const std::string& key, const std::optional<std::string>& value) {
    if (value) values.emplace_back(key, *value);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley, Besov and Navier-Stokes experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path, out_dir, seed;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "64-bit corpus seed");
  app.add_option("--set", sets, "extra key=value assignment (repeatable)");

  std::optional<std::string> input;
  std::string s_value = "0", p_value = "2", q_value = "2";
  auto* decompose = app.add_subcommand("decompose", "dyadic band table of a snapshot or corpus field");
  decompose->add_option("--input", input, "BSNAP1 snapshot");
  auto* norm = app.add_subcommand("norm", "homogeneous Besov norm of a snapshot or corpus field");
  norm->add_option("--input", input, "BSNAP1 snapshot");
  norm->add_option("--s", s_value, "regularity");
  norm->add_option("--p", p_value, "integrability (number or inf)");
  norm->add_option("--q", q_value, "summability (number or inf)");

  auto* verify = app.add_subcommand("verify", "identity and inequality suite over the corpus");

  std::optional<std::string> sim_n, sim_N, sim_L, sim_dt, sim_t_end, sim_init, sim_every, sim_out;
  auto* simulate = app.add_subcommand("simulate", "pseudo-spectral Navier-Stokes run");
  simulate->add_option("--n", sim_n, "dimension");
  simulate->add_option("--N", sim_N, "points per axis");
  simulate->add_option("--L", sim_L, "box length");
  simulate->add_option("--dt", sim_dt, "time step");
  simulate->add_option("--t-end", sim_t_end, "final time");
  simulate->add_option("--init", sim_init, "taylor-green, random-seeded or bsnap:<path>");
  simulate->add_option("--snapshot-every", sim_every, "steps between snapshots");
  simulate->add_option("--out-dir", sim_out, "output directory");

  std::optional<std::string> series, eps, dp, dq, dr, dT;
  std::optional<std::string> emit;
  auto* diagnose = app.add_subcommand("diagnose", "norm growth, energy budget and slope fits along a series");
  diagnose->add_option("--series", series, "synthetic, a snapshot directory or a snapshot index CSV");
  diagnose->add_option("--eps", eps, "comma-separated regularity excesses");
  diagnose->add_option("--p", dp, "integrability");
  diagnose->add_option("--q", dq, "summability");
  diagnose->add_option("--r", dr, "energy-budget exponent");
  diagnose->add_option("--T", dT, "singular time of the synthetic family");
  diagnose->add_option("--emit", emit, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::config_error);
  }

  try {
    lpb::ExperimentConfig config = config_path ? lpb::load_config(*config_path) : lpb::ExperimentConfig{};
    Overrides o;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw lpb::ConfigError(s, "--set expects key=value");
      o.values.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    o.add("output.dir", out_dir);
    o.add("corpus.seed", seed);
    o.add("grid.n", sim_n);
    o.add("grid.N", sim_N);
    o.add("grid.L", sim_L);
    o.add("solver.dt", sim_dt);
    o.add("solver.t_end", sim_t_end);
    o.add("solver.init", sim_init);
    o.add("solver.snapshot_every", sim_every);
    o.add("output.dir", sim_out);
    o.add("diagnostics.series", series);
    o.add("diagnostics.eps", eps);
    o.add("diagnostics.r", dr);
    o.add("diagnostics.T", dT);
    for (const auto& [k, v] : o.values) lpb::set_config_value(config, k, v);
    if (dp || dq) {
      const std::string p = dp.value_or(config.diagnostics.pq.front().first.str());
      const std::string q = dq.value_or(config.diagnostics.pq.front().second.str());
      lpb::set_config_value(config, "diagnostics.pq", p + ":" + q);
    }
    config.validate();

    const std::optional<std::filesystem::path> in =
        input ? std::optional<std::filesystem::path>(*input) : std::nullopt;
    if (*decompose) {
      lpb::run_decompose(config, in, std::cout);
    } else if (*norm) {
      lpb::BesovParams params;
      try {
        params.s = std::stod(s_value);
        params.p = lpb::parse_lebesgue(p_value);
        params.q = lpb::parse_lebesgue(q_value);
      } catch (const std::exception& e) {
        throw lpb::ConfigError("norm", e.what());
      }
      std::cout.precision(17);
      std::cout << lpb::run_norm(config, in, params) << "\n";
    } else if (*verify) {
      const auto report = lpb::run_verify(config, std::cout);
      std::cout << "verify: " << report.files.size() << " files in " << config.output_dir << ", "
                << report.failures() << " failures\n";
      return code(report.exit_code());
    } else if (*simulate) {
      lpb::run_simulate(config, std::cout);
    } else if (*diagnose) {
      const std::filesystem::path target =
          emit ? std::filesystem::path(*emit) : std::filesystem::path(config.output_dir) / "diagnostics.csv";
      lpb::run_diagnose(config, target, std::cout);
    }
    return code(ExitCode::success);
  } catch (const lpb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return code(ExitCode::config_error);
  } catch (const lpb::SimulationAborted& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return code(ExitCode::runtime_abort);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return code(ExitCode::config_error);
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return code(ExitCode::runtime_abort);
  }
}
