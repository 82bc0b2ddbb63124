#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "lpb/random.hpp"
#include "lpb/spectral.hpp"

namespace lpb::testing {

inline GridSpec grid3(int N, double L = 2.0 * kPi) { return GridSpec{3, N, L}; }

/// Random scalar field whose pairwise products survive 2/3-rule truncation.
inline SpectralField safe_scalar(const GridSpec& grid, std::uint64_t seed, const char* name = "scalar") {
  auto rng = SplitMix64::stream(seed, name);
  RandomFieldSpec spec;
  spec.max_index = dealias_safe_index(grid);
  return random_field(grid, spec, rng);
}

inline SpectralField safe_vector(const GridSpec& grid, std::uint64_t seed, bool solenoidal,
                                 const char* name = "vector") {
  auto rng = SplitMix64::stream(seed, name);
  RandomFieldSpec spec;
  spec.components = grid.n;
  spec.max_index = dealias_safe_index(grid);
  spec.solenoidal = solenoidal;
  return random_field(grid, spec, rng);
}

/// cos(k_unit * m.x) written directly into the two coefficients +-m (every other mode exactly 0).
inline SpectralField exact_cos(const GridSpec& grid, int m0, int m1 = 0, int m2 = 0) {
  SpectralField f(grid, 1);
  auto slot = [&](int a, int b, int c) {
    auto w = [&](int m) { return static_cast<std::size_t>((m % grid.N + grid.N) % grid.N); };
    const std::size_t N = static_cast<std::size_t>(grid.N);
    return grid.n == 3 ? (w(a) * N + w(b)) * N + w(c) : w(a) * N + w(b);
  };
  f.data()[slot(m0, m1, m2)] += 0.5;
  f.data()[slot(-m0, -m1, -m2)] += 0.5;
  return f;
}

}  // namespace lpb::testing
