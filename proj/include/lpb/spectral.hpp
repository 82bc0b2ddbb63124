#pragma once

#include <functional>
#include <optional>

#include "lpb/field.hpp"

namespace lpb {

using Wavevector = std::array<double, 3>;

/// Physical samples -> Fourier coefficients (e^{-i k.x} sign, 1/N^n normalisation).
SpectralField forward_transform(const GridFunction& f);
/// Fourier coefficients -> real physical samples (imaginary round-off discarded).
GridFunction inverse_transform(const SpectralField& f);
/// Inverse transform of one component into a caller-owned buffer of size N^n.
void inverse_component(const SpectralField& f, int c, std::span<double> out);

/// Sample a callable f(x) (x in [0,L)^n, x[2] = 0 when n = 2) into a scalar GridFunction.
GridFunction sample(const GridSpec& grid, const std::function<double(const Wavevector&)>& f);

/// Discrete L^p norm (sum_x |f(x)|^p (L/N)^n)^{1/p}; p = infinity is the grid max.
/// Vector and tensor fields use the pointwise Euclidean (Frobenius) magnitude.
double lp_norm(const GridFunction& f, Lebesgue p);
double lp_norm(const SpectralField& f, Lebesgue p);

/// Multiply every coefficient by m(k). m is never called at k = 0; m_zero is used there.
/// Throws std::domain_error if m is not finite on a grid wavenumber.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cplx(const Wavevector&)>& m,
                               cplx m_zero);

/// Apply a radial multiplier tabulated by integer |m|^2 (size >= max_m2 + 1).
SpectralField apply_radial(const SpectralField& f, std::span<const double> table);
void apply_radial_inplace(SpectralField& f, std::span<const double> table);

/// d/dx_axis of every component. Unpaired Nyquist modes are mapped to zero.
SpectralField derivative(const SpectralField& f, int axis);
/// Gradient of a scalar: n components.
SpectralField gradient(const SpectralField& f);
/// Velocity gradient tensor: component a*n + b holds d_a u_b.
SpectralField jacobian(const SpectralField& u);
/// Divergence of a vector field: scalar.
SpectralField divergence(const SpectralField& u);
/// Laplacian of every component.
SpectralField laplacian(const SpectralField& f);

/// (-Delta)^{-1}; throws std::invalid_argument if any zero mode is nonzero.
SpectralField inverse_laplacian(const SpectralField& f);

/// Leray projection u_k -> u_k - k (k.u_k)/|k|^2. Requires a zero-mean vector field.
SpectralField leray_project(const SpectralField& u);

/// 2/3-rule truncation: zero every mode with some |m_a| > N/3.
void dealias_inplace(SpectralField& f);
/// True if all energy sits in |m_a| <= limit on every axis.
bool spectrum_within(const SpectralField& f, int limit);

/// Largest |c_k - conj(c_{-k})| over modes, a measure of Hermitian symmetry.
double hermitian_defect(const SpectralField& f);

}  // namespace lpb
