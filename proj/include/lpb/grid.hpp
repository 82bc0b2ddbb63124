#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpb {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic box [0, L)^n sampled with N points per axis.
///
/// The torus stands in for R^n: every field is a band-limited trigonometric
/// polynomial and wavenumbers are k = (2*pi/L) * m with m in {-N/2, ..., N/2-1}^n.
struct GridSpec {
  int n = 3;
  int N = 32;
  double L = 2.0 * kPi;

  /// Throws std::invalid_argument unless n in {2,3}, N a power of two >= 4 and L > 0.
  void validate() const;

  std::size_t points() const;
  double spacing() const { return L / N; }
  double cell_volume() const;
  double volume() const;
  /// Wavenumber of the unit index step, 2*pi/L.
  double k_unit() const { return 2.0 * kPi / L; }

  /// Smallest nonzero resolved |k|.
  double k_min() const { return k_unit(); }
  /// Largest resolved |k| (corner of the index cube).
  double k_max() const;
  /// Radius of the largest sphere fully inside the resolved index cube.
  double k_nyquist_sphere() const { return k_unit() * (N / 2); }

  /// Signed mode index of array position i along one axis.
  int mode(int i) const { return i < N / 2 ? i : i - N; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

bool is_power_of_two(long long v);

/// Per-grid table of signed integer mode indices and |m|^2 for every array slot.
///
/// Shared and immutable; obtain through mode_table(grid).
class ModeTable {
 public:
  explicit ModeTable(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return m2_.size(); }

  /// |m|^2 for flat index idx (integer, so radial multipliers are exactly symmetric).
  std::int32_t m2(std::size_t idx) const { return m2_[idx]; }
  /// Signed mode index along `axis` for flat index idx.
  int m(std::size_t idx, int axis) const { return modes_[idx * 3 + axis]; }
  /// True if any axis sits on the unpaired Nyquist index -N/2.
  bool nyquist(std::size_t idx) const;
  /// Largest |m|^2 on the grid.
  std::int32_t max_m2() const { return max_m2_; }
  /// True if the mode survives the 2/3 rule (3|m_a| <= N on every axis).
  bool retained(std::size_t idx) const { return retained_[idx] != 0; }
  /// Flat index of the mode -m (Hermitian partner).
  std::size_t partner(std::size_t idx) const;

 private:
  GridSpec grid_;
  std::vector<std::int32_t> m2_;
  std::vector<std::int16_t> modes_;
  std::vector<std::uint8_t> retained_;
  std::int32_t max_m2_ = 0;
};

std::shared_ptr<const ModeTable> mode_table(const GridSpec& grid);

/// Lebesgue exponent p in [1, infinity]; infinity is represented exactly.
class Lebesgue {
 public:
  Lebesgue(double p);  // NOLINT(google-explicit-constructor): exponents read like numbers
  static Lebesgue infinity() { return Lebesgue(std::numeric_limits<double>::infinity()); }

  double value() const { return p_; }
  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  /// 1/p, with 1/infinity = 0.
  double inverse() const { return is_infinite() ? 0.0 : 1.0 / p_; }
  /// Hoelder conjugate p'.
  Lebesgue conjugate() const;
  /// Exponent whose reciprocal is 1/a + 1/b (throws if the sum exceeds 1).
  static Lebesgue from_inverse(double inv);

  std::string str() const;

  friend bool operator==(const Lebesgue&, const Lebesgue&) = default;

 private:
  double p_;
};

}  // namespace lpb
