#pragma once

#include <stdexcept>
#include <vector>

#include "lpb/field.hpp"

namespace lpb {

/// Velocity at time t of the standardized system
///   d_t u - Lap u + (u.grad) u + grad pi = 0,   div u = 0
/// on the periodic box.
struct SolverState {
  double t = 0.0;
  SpectralField u;
};

/// Thrown when a step produces NaN or infinity; carries the last finite state.
class BlowupSuspected : public std::runtime_error {
 public:
  explicit BlowupSuspected(SolverState last);
  const SolverState& last_finite() const { return last_; }

 private:
  SolverState last_;
};

/// Symmetric dealiased products u_i u_k, component i*n + k.
SpectralField velocity_products(const SpectralField& u);

/// -P[(u.grad) u], evaluated as -P[d_k (u_k u)] with 2/3-rule truncated products.
SpectralField nonlinear_term(const SpectralField& u);

/// Pressure pi = (-Lap)^{-1} d_i d_k (u_i u_k).
SpectralField compute_pressure(const SpectralField& u);

/// dt * max|u| * N / L (advisory limit 0.5).
double cfl_number(const SpectralField& u, double dt);
inline constexpr double kCflAdvisory = 0.5;

/// Integrating-factor RK4: the viscous factor e^{-|k|^2 dt} is applied exactly and
/// the projected nonlinearity is advanced by classical RK4.
class NavierStokesSolver {
 public:
  NavierStokesSolver(const GridSpec& grid, double dt);

  double dt() const { return dt_; }
  /// One step; throws BlowupSuspected on a non-finite result.
  SolverState step(const SolverState& s) const;

 private:
  GridSpec grid_;
  double dt_;
  std::vector<double> full_;  // e^{-|k|^2 dt} by |m|^2
  std::vector<double> half_;  // e^{-|k|^2 dt/2}
};

SolverState step(const SolverState& s, double dt);

/// Taylor-Green vortex (sin x1 cos x2, -cos x1 sin x2, 0) scaled to the box; decays as e^{-2 k0^2 t}.
SpectralField taylor_green(const GridSpec& grid);
/// Decay rate 2 k0^2 of the Taylor-Green vortex on this box.
double taylor_green_rate(const GridSpec& grid);

/// omega_ij = d_i u_j - d_j u_i, stored as n*n components (i*n + j); omega_ji is the exact negation.
SpectralField vorticity_from_velocity(const SpectralField& u);
/// u_i = (-Lap)^{-1} d_j omega_ij.
SpectralField velocity_from_vorticity(const SpectralField& omega);
/// Classical vorticity vector (omega_23, omega_31, omega_12) of a 3-D tensor.
SpectralField vorticity_vector(const SpectralField& omega);

/// L^2 norm of the vorticity-equation residual
///   d_t omega_ij - Lap omega_ij + (u.grad) omega_ij + omega_ik d_k u_j - omega_jk d_k u_i
/// with the time derivative a centered difference between a and b, and every other term
/// evaluated at the midpoint average. Throws std::invalid_argument unless b.t > a.t.
double vorticity_equation_residual(const SolverState& a, const SolverState& b);
/// The same residual tensor.
SpectralField vorticity_residual_field(const SolverState& a, const SolverState& b);

/// 1/2 |u|_{L^2}^2
double energy(const SpectralField& u);
/// Half the squared L^2 norm of the vorticity vector (a quarter of the squared tensor norm).
double enstrophy(const SpectralField& u);
/// Energy fraction held by modes with some |m_a| > N/4, the outer shell below the 2/3 cutoff.
double resolution_fraction(const SpectralField& u);
inline constexpr double kResolutionWarning = 1e-6;

}  // namespace lpb
