#pragma once

#include <cstdint>
#include <string_view>

#include "lpb/field.hpp"

namespace lpb {

/// SplitMix64 stream. Every random quantity in the project is drawn from one of
/// these, derived from a single 64-bit seed via stream(seed, name) so that
/// outputs are bit-reproducible across runs and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (both deviates used).
  double normal();

  /// Child stream keyed by a name (FNV-1a hash mixed into the parent seed).
  static SplitMix64 stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Recipe for corpus fields: i.i.d. complex Gaussian coefficients, Hermitian
/// symmetrised, zero mode and Nyquist planes zeroed, amplitude |k|^{-slope}.
struct RandomFieldSpec {
  int components = 1;
  /// Largest |m_a| per axis allowed to carry energy (index units).
  int max_index = 4;
  /// Modes with |m| below this radius (index units) are zeroed.
  double min_radius = 0.0;
  /// Modes with |m| above this radius (index units) are zeroed (<= 0: no radial cap).
  double max_radius = 0.0;
  double slope = 0.0;
  bool solenoidal = false;
  /// L^2 norm of the result (<= 0 leaves the raw draw).
  double l2_target = 1.0;
};

SpectralField random_field(const GridSpec& grid, const RandomFieldSpec& spec, SplitMix64& rng);

/// Largest per-axis index keeping every pairwise product free of 2/3-rule clipping.
inline int dealias_safe_index(const GridSpec& grid) { return grid.N / 6; }

}  // namespace lpb
