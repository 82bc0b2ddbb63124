#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpb/besov.hpp"
#include "lpb/ns_solver.hpp"

namespace lpb {

/// Lebesgue exponents r1..r5 and interpolation weights mu, nu of the eps < 2 argument.
struct ExponentChain {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0, r5 = 0.0;
  double mu = 0.0, nu = 0.0;
  /// Interval I = (lo, hi) holding 2n/r1.
  double interval_lo = 0.0, interval_hi = 0.0;
};

struct IndexSelection {
  int n = 3;
  double eps = 1.0;
  double r = 2.0;
  /// Summability index of the working norm: r when eps < 2, 1 when eps = 2.
  double r_tilde = 2.0;
  /// (eps - 1/2) / (eps - 1 + n/2)
  double lambda = 0.0;
  /// Absent in the eps = 2 branch.
  std::optional<ExponentChain> chain;

  /// Critical index s_r = -1 + n/r.
  double s_r() const { return -1.0 + n / r; }
  /// Regularity s_r + eps - 1 of the vorticity norm.
  double vorticity_regularity() const { return s_r() + eps - 1.0; }
};

/// I = (2n/r - 4/r, 2n/r) intersected with (2n/r - 2 + eps, 2n/r - 2/r + eps); empty pair when lo >= hi.
std::pair<double, double> index_interval(int n, double eps, double r);

/// Chooses 2n/r1 at lo + position (hi - lo) of I (position 1/2 is the default midpoint rule) and
/// derives the rest. Requires n >= 3, eps in [1, 2], r >= 2 and, for eps < 2, r < n/(2 - eps).
/// Throws std::invalid_argument on a violated precondition and std::logic_error if a derived
/// invariant fails.
IndexSelection select_indices(int n, double eps, double r, double position = 0.5);

/// |(r-1) mu + 2 nu - 1 - r eps / 2|
double exponent_identity_residual(const IndexSelection& sel);

/// Exponents alpha = 1 + r eps / 2 and beta = r (2 - eps) / 2 forced by scaling; alpha + beta = r + 1.
struct ScalingExponents {
  double alpha;
  double beta;
};
ScalingExponents scaling_exponents(double r, double eps);

/// Interpolation route for the L^{r2} factor. When r2 >= r5 a single geometric interpolation
/// with weight nu suffices; otherwise a geometric step with weight rho is followed by a Holder
/// step in the integrability index with weight sigma.
struct NuBranch {
  bool r2_at_least_r5 = true;
  double nu = 0.0;
  std::optional<double> rho;
  std::optional<double> sigma;
  /// Total weight carried by the B_r factor: nu, or rho + (1 - rho) sigma.
  double r_weight() const { return rho ? *rho + (1.0 - *rho) * *sigma : nu; }
};
NuBranch nu_branch(const IndexSelection& sel);

/// Per-band terms of the vorticity L^r energy balance at the midpoint of two states.
struct BudgetBand {
  int j = 0;
  double norm_a = 0.0;      // |Delta_J omega|_{L^r} at the first state
  double norm_b = 0.0;      // ... at the second state
  double rate = 0.0;        // (|Delta_J omega(b)|^r_r - |Delta_J omega(a)|^r_r) / dt
  double viscous = 0.0;     // -< Lap Delta_J omega, |Delta_J omega|^{r-2} Delta_J omega >
  double dissipation = 0.0; // |Delta_J omega|^r in L^{rn/(n-2)}
  double pairing = 0.0;     // < Omega_J, |Delta_J omega|^{r-2} Delta_J omega >
  double omega_norm = 0.0;  // |Omega_J|_{L^r}
  bool skipped = false;     // |Delta_J omega| below kBandFloor at the midpoint
};

struct EnergyBudget {
  double t = 0.0;  // midpoint time
  double r = 2.0;
  double eps = 1.0;
  /// eps < 2: weighted sum of rate terms; eps = 2: time derivative of |omega|_{B^{s_r+1}_{r,1}}.
  double lhs = 0.0;
  /// eps < 2: weighted dissipation surrogate; eps = 2: zero.
  double dissipation = 0.0;
  /// eps < 2: weighted pairing; eps = 2: | J -> 2^{J(s_r+1)} |Omega_J|_{L^r} |_{l^1}.
  double rhs = 0.0;
  /// (lhs + dissipation) / rhs
  std::optional<double> ratio;
  /// rhs / (|omega|^{1 + r eps/2}_{B_{r,r}} |omega|^{r(2-eps)/2}_{B_{rn/(n-2),r}}), or
  /// rhs / |omega|^2_{B^{s_r+1}_{r,1}} when eps = 2.
  std::optional<double> bound_ratio;
  /// Weighted sum of (rate / r + viscous - pairing), the exact balance before the dissipation bound.
  double balance_defect = 0.0;
  /// Weighted sum of the rate / r + viscous + |pairing| scales, for normalising the defect.
  double balance_scale = 0.0;
  std::vector<BudgetBand> bands;
};

inline constexpr double kBandFloor = 1e-14;

/// Vorticity balance between two consecutive states (b.t > a.t), n >= 3.
/// Weights are 2^{J r (s_r + eps - 1)} for eps < 2 and 2^{J (s_r + 1)} for eps = 2.
EnergyBudget energy_budget(const LittlewoodPaley& lp, const SolverState& a, const SolverState& b, double r,
                           double eps);

/// Omega_J = [u.grad, Delta_J] omega - 2 Delta_J (omega.grad u), (omega.grad u)_ij = omega_ik d_k u_j.
class OmegaOperator {
 public:
  OmegaOperator(const LittlewoodPaley& lp, const SpectralField& u);
  const SpectralField& vorticity() const { return omega_; }
  SpectralField at(int j) const;

 private:
  const LittlewoodPaley& lp_;
  SpectralField omega_;
  std::vector<GridFunction> u_phys_;
  SpectralField global_;  // (u.grad) omega + 2 omega.grad u, dealiased
};

/// Self-similar field lambda^{-1} U(x / lambda), lambda = sqrt(T - t), built from a profile sampled
/// on its grid. The profile is treated as a function on R^n supported in one box centred at the
/// box midpoint; its Fourier transform is evaluated at the compressed frequencies by direct
/// per-axis summation.
class SelfSimilarFamily {
 public:
  explicit SelfSimilarFamily(const SpectralField& profile);

  const GridSpec& grid() const { return grid_; }
  /// Field at scale lambda (lambda = 1 reproduces the profile). The unpaired Nyquist modes are zeroed.
  SpectralField at_scale(double lambda) const;

 private:
  GridSpec grid_;
  int components_;
  std::vector<std::vector<double>> samples_;  // physical values per component
};

/// Energy fraction beyond the 2/3-rule region; a family sample above kEscapeTolerance is skipped.
double escaped_fraction(const SpectralField& u);
inline constexpr double kEscapeTolerance = 1e-10;

struct NormRequest {
  double eps = 1.0;
  Lebesgue p = 2.0;
  Lebesgue q = 2.0;
  /// s_p + eps
  double regularity(int n) const { return critical_index(n, p) + eps; }
};

struct FamilySample {
  double t = 0.0;
  double lambda = 1.0;
  /// One entry per request; empty when skipped.
  std::vector<double> norms;
  std::string skip_reason;
};

/// Samples the family at the given times t < T and evaluates |u(t)|_{B^{s_p+eps}_{p,q}} per request.
std::vector<FamilySample> synthetic_blowup_family(const SelfSimilarFamily& family, const LittlewoodPaley& lp,
                                                  double T, std::span<const NormRequest> requests,
                                                  std::span<const double> times);

/// Divergence-free Gaussian-enveloped profile centred in the box: curl of a Gaussian vector potential.
SpectralField gaussian_profile(const GridSpec& grid, double width);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   // root-mean-square residual of log(norm)
  double std_error = 0.0;  // standard error of the slope
  std::size_t samples = 0;
};

/// Least squares of log(norm) against log(T - t). Needs >= 5 samples with strictly increasing
/// t < T and positive norms.
RateFit fit_rate(std::span<const double> times, std::span<const double> norms, double T);

/// (gamma c (T - t))^{-1/gamma}; requires gamma, c > 0 and t < T.
double ode_lower_bound(double gamma, double c, double T, double t);

enum class OdeVerdict { pass, fail, precondition_unmet };
std::string to_string(OdeVerdict v);

struct OdeLemmaReport {
  OdeVerdict verdict = OdeVerdict::pass;
  /// min over samples of (X - bound) / bound
  double worst_relative_slack = 0.0;
  std::string detail;
};

/// Checks a sampled trajectory against the lower bound. Preconditions checked first: the
/// discrete inequality (X_{k+1} - X_k) / dt <= c max(X_k, X_{k+1})^{1+gamma} and divergence at T,
/// the latter by extrapolating the zero of X^{-gamma} from the last two samples to within
/// `tolerance (T - t_0)`. Samples below bound (1 - tolerance) fail.
OdeLemmaReport verify_ode_lemma(std::span<const double> times, std::span<const double> values, double gamma,
                                double c, double T, double tolerance);

/// Norms watched near a singular time, with the constant-one interpolation checks.
struct QualitativeSample {
  double b_half = 0.0;   // |u|_{B^{-1/2}_{inf,inf}}
  double b_energy = 0.0; // |u|_{B^{-n/2}_{inf,inf}}
  double b_eps = 0.0;    // |u|_{B^{-1+eps}_{inf,inf}}
  double linf = 0.0;
  double lambda = 0.0;
  /// (rhs - lhs) / rhs for |u|_{B^{-1/2}} <= |u|^lambda_{B^{-n/2}} |u|^{1-lambda}_{B^{-1+eps}}.
  double slack = 0.0;
  double b_zero = 0.0;   // |u|_{B^0_{inf,inf}}
  double lambda_zero = 0.0;
  /// Same check at regularity 0 with lambda_zero = (eps - 1)/(eps - 1 + n/2); absent when lambda_zero = 0.
  std::optional<double> slack_zero;
  /// (|u|_{B^0_{inf,1}} - |u|_{L^inf}) / |u|_{B^0_{inf,1}}
  double lebesgue_slack = 0.0;
};

QualitativeSample qualitative_blowup_monitor(const LittlewoodPaley& lp, const SpectralField& u, double eps);

}  // namespace lpb
