#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <vector>

#include "lpb/field.hpp"

namespace lpb {

/// Radial cutoffs chi and phi of the dyadic partition of unity.
///
/// chi(r) = 1 on [0, 3/4], 0 on [4/3, inf), and in between the C-infinity step
/// built from h(t) = exp(-1/t):  chi = h(1-t) / (h(t) + h(1-t)),  t = (r - 3/4) / (4/3 - 3/4).
/// phi(r) = chi(r/2) - chi(r) is supported in [3/4, 8/3], so both partition
/// identities telescope exactly.
class CutoffProfile {
 public:
  static constexpr double kInner = 3.0 / 4.0;
  static constexpr double kChiOuter = 4.0 / 3.0;
  static constexpr double kPhiOuter = 8.0 / 3.0;

  /// `table_density` is the number of tabulation samples per unit radius used by tabulate().
  explicit CutoffProfile(double table_density = 1e4);

  double chi(double r) const;
  double phi(double r) const { return chi(0.5 * r) - chi(r); }
  double table_density() const { return table_density_; }

  struct Sample {
    double radius, chi, phi;
  };
  /// Samples on [0, r_max] (count = 0 derives the count from table_density).
  std::vector<Sample> tabulate(double r_max = 3.0, std::size_t count = 0) const;
  /// CSV (radius,chi,phi).
  void write_csv(std::ostream& os, std::size_t count = 10000, double r_max = 3.0) const;

 private:
  double table_density_;
};

/// Build the cutoff pair; `smoothing` > 0 sets tabulation density, never the support.
CutoffProfile build_cutoffs(double smoothing = 1.0);

/// Dyadic indices j whose annulus 2^j [3/4, 8/3] meets the resolved |k| range.
struct BandRange {
  int j_min = 0;
  int j_max = -1;
  /// Bands whose annulus reaches past the largest sphere inside the index cube.
  int first_partial = 0;

  int count() const { return j_max - j_min + 1; }
  bool contains(int j) const { return j >= j_min && j <= j_max; }
  bool partial(int j) const { return j >= first_partial; }
};

BandRange band_range(const GridSpec& grid);

/// Littlewood-Paley projections on one grid with cached radial multiplier tables.
///
/// Tables are indexed by the integer |m|^2, so every radial multiplier is
/// bit-exactly symmetric under k -> -k. Safe for concurrent use.
class LittlewoodPaley {
 public:
  LittlewoodPaley(const GridSpec& grid, CutoffProfile profile = CutoffProfile());

  const GridSpec& grid() const { return grid_; }
  const BandRange& bands() const { return bands_; }
  const CutoffProfile& profile() const { return profile_; }

  /// chi(2^{-j} |k|) by |m|^2.
  std::shared_ptr<const std::vector<double>> chi_table(int j) const;
  /// phi(2^{-j} |k|) = chi(2^{-j-1}|k|) - chi(2^{-j}|k|) by |m|^2.
  std::shared_ptr<const std::vector<double>> phi_table(int j) const;

  /// Low-frequency cut S_j u = chi(2^{-j} D) u.
  SpectralField low(int j, const SpectralField& u) const;
  /// Dyadic block Delta_j u = phi(2^{-j} D) u.
  SpectralField delta(int j, const SpectralField& u) const;

 private:
  GridSpec grid_;
  CutoffProfile profile_;
  BandRange bands_;
  std::size_t table_size_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const std::vector<double>>> chi_cache_;
  mutable std::map<int, std::shared_ptr<const std::vector<double>>> phi_cache_;
};

SpectralField s_proj(const LittlewoodPaley& lp, int j, const SpectralField& u);
SpectralField delta_proj(const LittlewoodPaley& lp, int j, const SpectralField& u);

/// Physical-space dyadic pieces of one field over the band range.
///
/// delta[j - j_min] holds Delta_j u and low[j - j_min] holds S_{j-1} u, the two
/// factors of a paraproduct summand. Pieces whose spectrum vanishes are left
/// empty (is_zero) instead of being transformed.
struct BandPieces {
  GridSpec grid;
  int components = 1;
  int j_min = 0;
  std::vector<GridFunction> delta;
  std::vector<GridFunction> low;

  int count() const { return static_cast<int>(delta.size()); }
  const GridFunction& band(int j) const { return delta[static_cast<std::size_t>(j - j_min)]; }
  const GridFunction& low_before(int j) const { return low[static_cast<std::size_t>(j - j_min)]; }
  static bool is_zero(const GridFunction& g) { return g.values.empty(); }
};

BandPieces band_pieces(const LittlewoodPaley& lp, const SpectralField& u, bool with_low = true);

/// Ratios monitored for the Bernstein-type inequalities at band j.
struct BernsteinReport {
  std::optional<double> low_over_full;     // |S_j u|_p / |u|_p
  std::optional<double> band_over_full;    // |Delta_j u|_p / |u|_p
  std::optional<double> derivative_ratio;  // |rho(D) Delta_j u|_q / (2^{j lambda} 2^{j(n/p-n/q)} |Delta_j u|_p)
  std::optional<double> inverse_ratio;     // |Delta_j u|_p / (2^{-j} |grad Delta_j u|_p)
};

/// rho(D) = |D|^lambda. Every ratio is nullopt when its denominator vanishes.
BernsteinReport verify_bernstein(const LittlewoodPaley& lp, int j, const SpectralField& u, Lebesgue p,
                                 Lebesgue q, double lambda);

}  // namespace lpb
