#pragma once

#include <cstdlib>
#include <new>
#include <span>
#include <vector>

#include "lpb/grid.hpp"

namespace lpb {

/// 64-byte aligned allocator so FFTW can run SIMD kernels in place on field storage.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t kAlignment = 64;

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}  // NOLINT

  T* allocate(std::size_t count) {
    std::size_t bytes = (count * sizeof(T) + kAlignment - 1) / kAlignment * kAlignment;
    void* p = std::aligned_alloc(kAlignment, bytes == 0 ? kAlignment : bytes);
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const {
    return true;
  }
};

using CoeffVector = std::vector<cplx, AlignedAllocator<cplx>>;

/// Field on the periodic grid stored as full-spectrum complex Fourier coefficients.
///
/// Coefficient convention: c_k = N^{-n} sum_x f(x) e^{-i k.x}, so f(x) = sum_k c_k e^{i k.x}.
/// Components are stored back to back; each block is row-major over the axes
/// with the last axis fastest and FFT index ordering (m = i for i < N/2, else i - N).
/// A scalar has 1 component, a vector n, and a rank-2 tensor n*n (index i*n + j).
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const GridSpec& grid, int components);

  const GridSpec& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t points() const { return points_; }

  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;
  std::span<cplx> data() { return coeffs_; }
  std::span<const cplx> data() const { return coeffs_; }

  /// Zero-mode coefficient of component c.
  cplx mean(int c) const { return component(c)[0]; }
  /// Zero mode negligible (round-off level, 1e-13 of the peak coefficient) in every component.
  bool zero_mean() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  /// Extract one component as a scalar field.
  SpectralField extract(int c) const;
  /// Overwrite component c with the scalar field s.
  void assign(int c, const SpectralField& s);

  void require_same_grid(const SpectralField& other, const char* what) const;

 private:
  GridSpec grid_;
  int components_ = 0;
  std::size_t points_ = 0;
  CoeffVector coeffs_;
};

/// Real samples on the grid, same component layout as SpectralField.
struct GridFunction {
  GridSpec grid;
  int components = 1;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(const GridSpec& g, int c);

  std::size_t points() const { return values.size() / static_cast<std::size_t>(components); }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;
};

/// Spectral L^2 inner product Re <f, g> = L^n sum_k conj(f_k) g_k over all components.
double spectral_inner(const SpectralField& f, const SpectralField& g);
/// Spectral L^2 norm, equal to the physical quadrature L^2 norm by discrete Parseval.
double spectral_l2(const SpectralField& f);
/// Max over modes of |f_k|.
double max_abs_coeff(const SpectralField& f);
/// L^2 of (f - g) relative to L^2 of g (absolute if g vanishes).
double relative_l2_error(const SpectralField& f, const SpectralField& g);

}  // namespace lpb
