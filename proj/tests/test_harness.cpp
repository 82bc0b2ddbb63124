#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpb/harness.hpp"
#include "lpb/snapshot.hpp"
#include "support.hpp"

using namespace lpb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lpb-harness-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ExperimentConfig small_config(const fs::path& dir) {
  ExperimentConfig c;
  c.grid.N = 16;
  c.corpus.count = 2;
  c.output_dir = dir.string();
  return c;
}

std::string config_error_path(const std::string& text) {
  try {
    parse_config_text(text).validate();
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("config round trip", "[config]") {
  const ExperimentConfig def;
  CHECK(serialize_config(parse_config_text(serialize_config(def))) == serialize_config(def));

  ExperimentConfig c;
  c.grid.N = 64;
  c.grid.L = 0.1 + 0.2;
  c.corpus.seed = 18446744073709551615ull;
  c.solver.init = "bsnap:/tmp/x.bsnap";
  c.diagnostics.eps = {1.0, 1.25, 2.0};
  c.diagnostics.pq = {{2.0, 2.0}, {4.0, 1.0}, {Lebesgue::infinity(), Lebesgue::infinity()}};
  const auto back = parse_config_text(serialize_config(c));
  CHECK(back.grid.L == c.grid.L);
  CHECK(back.corpus.seed == c.corpus.seed);
  CHECK(back.diagnostics.pq[2].first.is_infinite());
  CHECK(serialize_config(back) == serialize_config(c));

  const auto parsed = parse_config_text("# comment\n grid.N = 64  \n\ndiagnostics.eps=1,1.5\n");
  CHECK(parsed.grid.N == 64);
  CHECK(parsed.diagnostics.eps == std::vector<double>{1.0, 1.5});
}

TEST_CASE("config validation names the field", "[config]") {
  CHECK(config_error_path("grid.N=48") == "grid.N");
  CHECK(config_error_path("grid.N=abc") == "grid.N");
  CHECK(config_error_path("grid.n=4") == "grid.n");
  CHECK(config_error_path("grid.L=-1") == "grid.L");
  CHECK(config_error_path("solver.dt=0") == "solver.dt");
  CHECK(config_error_path("solver.init=vortex") == "solver.init");
  CHECK(config_error_path("diagnostics.eps=0.5") == "diagnostics.eps");
  CHECK(config_error_path("diagnostics.pq=2") == "diagnostics.pq");
  CHECK(config_error_path("diagnostics.eps=1.5\ndiagnostics.r=7") == "diagnostics.r");
  CHECK(config_error_path("grid.size=4") == "grid.size");
  CHECK(config_error_path("no equals sign") == "line 1");
  CHECK(config_error_path("grid.N=64") == "");
  try {
    parse_config_text("grid.N=48").validate();
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("grid.N") == 0);
  }
}

TEST_CASE("verify suite writes reports and passes", "[harness]") {
  const fs::path a = scratch("verify-a"), b = scratch("verify-b"), c = scratch("verify-c");
  std::ostringstream log;
  auto ca = small_config(a);
  const auto ra = run_verify(ca, log);
  CHECK(ra.exit_code() == ExitCode::success);
  CHECK(ra.files.size() >= 12);
  for (const auto& f : ra.files) CHECK(fs::exists(f));
  CHECK_FALSE(ra.checks.empty());

  auto cb = small_config(b);
  run_verify(cb, log);
  auto cc = small_config(c);
  cc.corpus.seed = 99;
  const auto rc = run_verify(cc, log);
  CHECK(rc.exit_code() == ExitCode::success);
  for (const auto& f : ra.files) {
    const auto name = f.filename();
    if (name == "config.txt") continue;
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "bony_estimates.csv") != slurp(c / "bony_estimates.csv"));
  REQUIRE(ra.checks.size() == rc.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    CHECK(ra.checks[i].id == rc.checks[i].id);
    CHECK(ra.checks[i].failures == rc.checks[i].failures);
  }
}

TEST_CASE("simulate presets", "[harness]") {
  std::ostringstream log;
  const fs::path tg = scratch("sim-tg");
  auto c = small_config(tg);
  c.solver.dt = 1e-3;
  c.solver.t_end = 0.05;
  const auto rep = run_simulate(c, log);
  REQUIRE(rep.taylor_green_error.has_value());
  CHECK(*rep.taylor_green_error <= 1e-6);
  CHECK(rep.steps == 50);
  CHECK(rep.snapshots.size() == 6);
  CHECK(fs::exists(tg / "timeseries.csv"));
  CHECK(fs::exists(tg / "snapshots.csv"));
  CHECK(load_bsnap(rep.snapshots.back()).grid() == c.grid);

  const fs::path rnd = scratch("sim-random");
  auto r = small_config(rnd);
  r.solver.init = "random-seeded";
  r.solver.amplitude = 0.1;
  r.solver.dt = 5e-3;
  r.solver.t_end = 0.1;
  const auto rr = run_simulate(r, log);
  CHECK(rr.energy_monotone);
  CHECK_FALSE(rr.cfl_warning);
  const fs::path rnd2 = scratch("sim-random-2");
  r.output_dir = rnd2.string();
  run_simulate(r, log);
  CHECK(slurp(rnd / "timeseries.csv") == slurp(rnd2 / "timeseries.csv"));

  const fs::path fast = scratch("sim-cfl");
  auto f = small_config(fast);
  f.solver.init = "random-seeded";
  f.solver.amplitude = 50.0;
  f.solver.dt = 0.05;
  f.solver.t_end = 0.1;
  std::ostringstream warn;
  const auto rf = run_simulate(f, warn);
  CHECK(rf.cfl_warning);
  CHECK(rf.steps == 2);
  CHECK(warn.str().find("CFL") != std::string::npos);

  const fs::path blow = scratch("sim-blowup");
  auto bl = small_config(blow);
  bl.solver.init = "random-seeded";
  bl.solver.amplitude = 1e4;
  bl.solver.dt = 0.5;
  bl.solver.t_end = 50.0;
  try {
    run_simulate(bl, log);
    FAIL("expected SimulationAborted");
  } catch (const SimulationAborted& e) {
    CHECK(fs::exists(e.snapshot()));
    CHECK(std::string(e.what()).find(e.snapshot().string()) != std::string::npos);
  }
}

TEST_CASE("diagnose synthetic and solver series", "[harness]") {
  std::ostringstream log;
  const fs::path dir = scratch("diagnose");
  auto c = small_config(dir);
  c.grid.N = 64;
  c.diagnostics.eps = {1.5, 2.0};
  c.diagnostics.pq = {{2.0, 1.0}};
  const auto rep = run_diagnose(c, dir / "diag.csv", log);
  REQUIRE(rep.summary.size() == 2);
  for (const auto& s : rep.summary) {
    REQUIRE(s.slope.has_value());
    CHECK(s.within_tolerance);
    CHECK(std::abs(*s.slope - s.target) <= kSlopeTolerance);
  }
  CHECK(rep.summary[0].target == -0.75);
  CHECK(rep.summary[1].target == -1.0);
  CHECK(fs::exists(dir / "diag_summary.csv"));
  CHECK(slurp(dir / "diag.csv").rfind("t,eps,p,q,norm,fitted_slope_running,budget_lhs,budget_rhs,ratio,interp_slack",
                                     0) == 0);

  const fs::path sim = scratch("diagnose-sim");
  auto s = small_config(sim);
  s.solver.init = "random-seeded";
  s.solver.t_end = 0.01;
  s.solver.dt = 5e-3;
  s.solver.snapshot_every = 1;
  run_simulate(s, log);
  s.diagnostics.series = sim.string();
  const auto ds = run_diagnose(s, sim / "diag.csv", log);
  CHECK(ds.rows == 3);
  CHECK_FALSE(ds.summary[0].slope.has_value());

  const fs::path empty = scratch("diagnose-empty");
  fs::create_directories(empty);
  s.diagnostics.series = empty.string();
  try {
    run_diagnose(s, empty / "diag.csv", log);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "diagnostics.series");
  }
}

TEST_CASE("decompose and norm", "[harness]") {
  std::ostringstream log;
  const fs::path dir = scratch("decompose");
  auto c = small_config(dir);
  run_decompose(c, std::nullopt, log);
  CHECK(fs::exists(dir / "bands.csv"));
  CHECK(fs::exists(dir / "cutoff_profile.csv"));
  const SpectralField u = corpus_field(c, "decompose", 0);
  save_bsnap(dir / "u.bsnap", u);
  const LittlewoodPaley lp(c.grid);
  const BesovParams p{0.5, 2.0, 2.0};
  CHECK(run_norm(c, dir / "u.bsnap", p) == besov_norm(lp, u, p));
  CHECK(run_norm(c, std::nullopt, p) == besov_norm(lp, u, p));
}
