#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpb/besov.hpp"
#include "lpb/config.hpp"
#include "lpb/ns_solver.hpp"

namespace lpb {

enum class ExitCode : int { success = 0, assertion_failure = 1, config_error = 2, runtime_abort = 3 };

/// Corpus field i of the configured grid: zero-mean, dealias-safe, spectral slope from the config.
/// `components` is 1 or n; vector fields can be made solenoidal.
SpectralField corpus_field(const ExperimentConfig& config, std::string_view stream, std::uint64_t index,
                           int components = 1, bool solenoidal = false);

struct CheckTally {
  std::string id;
  std::size_t count = 0;
  std::size_t failures = 0;
  /// Largest defect (identities) or most negative relative slack (constant-one inequalities).
  double worst = 0.0;
  double tolerance = 0.0;
};

struct VerifyReport {
  std::vector<CheckTally> checks;
  std::vector<std::filesystem::path> files;

  std::size_t failures() const;
  ExitCode exit_code() const { return failures() == 0 ? ExitCode::success : ExitCode::assertion_failure; }
};

/// Runs the identity and inequality suite over the corpus, writing one CSV per family into
/// config.output_dir. Exact identities and constant-one inequalities count as failures;
/// implied-constant ratios are recorded only.
VerifyReport run_verify(const ExperimentConfig& config, std::ostream& log);

/// Raised when the solver produces a non-finite state; the last finite state is already saved.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(const std::string& what, std::filesystem::path snapshot)
      : std::runtime_error(what), snapshot_(std::move(snapshot)) {}
  const std::filesystem::path& snapshot() const { return snapshot_; }

 private:
  std::filesystem::path snapshot_;
};

struct SimulationReport {
  SolverState final_state;
  std::size_t steps = 0;
  std::vector<std::filesystem::path> snapshots;
  /// L^2 distance to the closed-form decay (Taylor-Green initial data only).
  std::optional<double> taylor_green_error;
  bool cfl_warning = false;
  bool resolution_warning = false;
  bool energy_monotone = true;
};

/// Solver run: snapshots/snap_<step>.bsnap, snapshots.csv (step,t,file) and
/// timeseries.csv (t,energy,enstrophy,max_abs_u,resolution_fraction) in config.output_dir.
SimulationReport run_simulate(const ExperimentConfig& config, std::ostream& log);

struct SlopeSummary {
  double eps = 0.0;
  Lebesgue p = 2.0;
  Lebesgue q = 2.0;
  std::optional<double> slope;
  double target = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  bool within_tolerance = false;
};

inline constexpr double kSlopeTolerance = 0.05;

struct DiagnoseReport {
  std::size_t rows = 0;
  std::vector<SlopeSummary> summary;
  std::vector<std::string> skipped;
};

/// Diagnostics over diagnostics.series: the synthetic family, a snapshot directory, or a snapshot
/// index CSV (columns step,t,file). Rows go to `emit`; the slope summary goes to
/// <emit stem>_summary.csv. Throws ConfigError("diagnostics.series") for a missing or empty series.
DiagnoseReport run_diagnose(const ExperimentConfig& config, const std::filesystem::path& emit, std::ostream& log);

/// Band table (j, l2, linf, energy_fraction) of a field and the cutoff profile CSV.
void run_decompose(const ExperimentConfig& config, const std::optional<std::filesystem::path>& input,
                   std::ostream& log);

/// |u|_{B^s_{p,q}} of a snapshot, or of corpus field 0 when no input is given.
double run_norm(const ExperimentConfig& config, const std::optional<std::filesystem::path>& input,
                const BesovParams& params);

}  // namespace lpb
