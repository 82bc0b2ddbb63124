#include "lpb/random.hpp"

#include <cmath>

#include "lpb/spectral.hpp"

namespace lpb {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  SplitMix64 mixer(seed ^ h);
  std::uint64_t a = mixer.next();
  SplitMix64 second(a ^ (index * 0xD1B54A32D192ED03ULL));
  return SplitMix64(second.next());
}

SpectralField random_field(const GridSpec& grid, const RandomFieldSpec& spec, SplitMix64& rng) {
  const int n = grid.n;
  const int comps = spec.solenoidal ? n : spec.components;
  SpectralField raw(grid, comps);
  const auto modes = mode_table(grid);
  const int nyq = -grid.N / 2;
  for (int c = 0; c < comps; ++c) {
    auto d = raw.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      // draw for every slot so the stream position does not depend on the filters
      double re = rng.normal();
      double im = rng.normal();
      const std::int32_t m2 = modes->m2(idx);
      if (m2 == 0) continue;
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        int m = modes->m(idx, a);
        if (m == nyq || std::abs(m) > spec.max_index) inside = false;
      }
      const double radius = std::sqrt(static_cast<double>(m2));
      if (radius < spec.min_radius) inside = false;
      if (spec.max_radius > 0.0 && radius > spec.max_radius) inside = false;
      if (!inside) continue;
      double amp = spec.slope == 0.0 ? 1.0 : std::pow(radius * grid.k_unit(), -spec.slope);
      d[idx] = amp * cplx(re, im);
    }
  }
  SpectralField field(grid, comps);
  for (int c = 0; c < comps; ++c) {
    auto src = raw.component(c);
    auto dst = field.component(c);
    for (std::size_t idx = 0; idx < src.size(); ++idx)
      dst[idx] = 0.5 * (src[idx] + std::conj(src[modes->partner(idx)]));
  }
  if (spec.solenoidal) field = leray_project(field);
  if (spec.l2_target > 0.0) {
    double norm = spectral_l2(field);
    if (norm > 0.0) field *= spec.l2_target / norm;
  }
  return field;
}

}  // namespace lpb
