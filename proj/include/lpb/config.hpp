#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpb/grid.hpp"

namespace lpb {

/// Validation or parse failure tied to one dotted key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct CorpusConfig {
  std::uint64_t seed = 1;
  int count = 8;
  /// Amplitude decay |k|^{-slope} of corpus coefficients.
  double slope = 0.0;
};

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.1;
  /// taylor-green, random-seeded or bsnap:<path>
  std::string init = "taylor-green";
  int snapshot_every = 10;
  /// L^2 norm of a random-seeded initial velocity.
  double amplitude = 0.5;
};

struct DiagnosticsConfig {
  std::vector<double> eps{1.5};
  std::vector<std::pair<Lebesgue, Lebesgue>> pq{{2.0, 2.0}};
  double r = 2.0;
  double T = 1.0;
  /// "synthetic" for the self-similar family, otherwise a snapshot directory or index CSV.
  std::string series = "synthetic";
  /// Synthetic family: Gaussian profile width, smallest scale and sample count.
  double width = 0.5;
  double lambda_min = 0.5;
  int samples = 9;
};

/// Flat key=value experiment description with dotted keys (grid.N=64).
struct ExperimentConfig {
  GridSpec grid{3, 32, 2.0 * kPi};
  double smoothing = 1.0;
  CorpusConfig corpus;
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  std::string output_dir = "out";

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

/// Keys absent from the text keep their defaults. Throws ConfigError on unknown keys or bad values.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Every key, one per line, with round-trip exact numbers.
std::string serialize_config(const ExperimentConfig& config);

/// Applies one key=value assignment.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// "2:2,4:1,inf:inf"
std::vector<std::pair<Lebesgue, Lebesgue>> parse_pq_list(const std::string& text);
Lebesgue parse_lebesgue(const std::string& text);

}  // namespace lpb
