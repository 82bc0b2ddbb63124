#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lpb/littlewood_paley.hpp"

namespace lpb {

/// Critical Navier-Stokes regularity s_p = -1 + n/p.
inline double critical_index(int n, Lebesgue p) { return -1.0 + n * p.inverse(); }

/// Besov triple (s, p, q). Derived quantities are computed on demand.
struct BesovParams {
  double s = 0.0;
  Lebesgue p = 2.0;
  Lebesgue q = 2.0;

  /// Homogeneity degree n/p - s under x -> lambda x.
  double homogeneity(int n) const { return n * p.inverse() - s; }
  /// Regularity excess over s_p.
  double critical_offset(int n) const { return s - critical_index(n, p); }
};

/// l^q norm of a nonnegative sequence (q = infinity is the max).
double sequence_lq(std::span<const double> a, Lebesgue q);

/// Dyadic profile of one field: |Delta_j u|_{L^p} for j in the band range.
struct BandProfile {
  int j_min = 0;
  std::vector<double> norms;

  /// || j -> 2^{js} norms_j ||_{l^q}
  double weighted(double s, Lebesgue q) const;
};

BandProfile band_profile(const BandPieces& pieces, Lebesgue p);
BandProfile band_profile(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p);

/// Homogeneous Besov seminorm over the band range. Throws on a nonzero zero mode.
double besov_norm(const LittlewoodPaley& lp, const SpectralField& u, const BesovParams& params);

/// Homogeneous Sobolev norm (sum_k |k|^{2s} |u_k|^2 L^n)^{1/2}. Throws on a nonzero zero mode.
double sobolev_norm(const SpectralField& u, double s);

/// Shell-wise bounds [c_lo, c_hi] of |u|_{B^s_{2,2}} / |u|_{H^s} over every nonzero |k| on the grid.
std::pair<double, double> sobolev_envelope(const LittlewoodPaley& lp, double s);

/// Field with the same coefficients on the box L * 2^m, i.e. u(2^{-m} x).
SpectralField dilate_box(const SpectralField& u, int m);

/// |u|_{B^{n/p2+delta}_{p2,q2}} / |u|_{B^{n/p1+delta}_{p1,q1}}; nullopt on a zero denominator.
std::optional<double> verify_embedding(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p1,
                                       Lebesgue p2, Lebesgue q1, Lebesgue q2, double delta);

struct LebesgueComparison {
  double upper;  // |u|_{B^0_{p,inf}} / |u|_{L^p}
  double lower;  // |u|_{L^p} / |u|_{B^0_{p,1}}, never above 1
};
std::optional<LebesgueComparison> verify_lebesgue_comparison(const LittlewoodPaley& lp, const SpectralField& u,
                                                             Lebesgue p);

struct HolderCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs; the inequality holds with constant one.
  double slack() const { return rhs - lhs; }
  double relative_slack() const { return rhs > 0.0 ? (rhs - lhs) / rhs : rhs - lhs; }
};

/// Interpolated triple between a and b with weight lambda on a.
BesovParams interpolate(const BesovParams& a, const BesovParams& b, double lambda);

HolderCheck verify_interpolation_holder(const LittlewoodPaley& lp, const SpectralField& u, const BesovParams& a,
                                        const BesovParams& b, double lambda);
HolderCheck interpolation_holder(const BandProfile& pa, const BandProfile& pb, const BandProfile& pmid,
                                 const BesovParams& a, const BesovParams& b, double lambda);

/// |u|_{B^{lambda s1+(1-lambda)s2}_{p,1}} lambda(1-lambda)(s2-s1) / (|u|^lambda_{B^{s1}_{p,inf}} |u|^{1-lambda}_{B^{s2}_{p,inf}}).
std::optional<double> verify_interpolation_geometric(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p,
                                                     double s1, double s2, double lambda);

/// Annulus {inner <= |xi| <= outer} used to declare band-supported pieces.
struct Annulus {
  double inner = 3.0 / 4.0;
  double outer = 8.0 / 3.0;
};

/// Pieces u_j (j = j_first + index), each spectrally inside 2^j * annulus.
/// Returns |sum u_j|_{B^s_{p,q}} / | j -> 2^{js} |u_j|_p |_{l^q}. Throws std::invalid_argument
/// when a piece has energy outside its declared annulus.
std::optional<double> verify_convergence_bound(const LittlewoodPaley& lp, std::span<const SpectralField> pieces,
                                               int j_first, const Annulus& annulus, const BesovParams& params);

}  // namespace lpb
