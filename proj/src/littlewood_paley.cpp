#include "lpb/littlewood_paley.hpp"

#include <cmath>
#include <iomanip>

#include "lpb/spectral.hpp"

namespace lpb {

CutoffProfile::CutoffProfile(double table_density) : table_density_(table_density) {
  if (!(table_density > 0.0)) throw std::invalid_argument("cutoff smoothing must be positive");
}

double CutoffProfile::chi(double r) const {
  r = std::abs(r);
  if (r <= kInner) return 1.0;
  if (r >= kChiOuter) return 0.0;
  const double t = (r - kInner) / (kChiOuter - kInner);
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

std::vector<CutoffProfile::Sample> CutoffProfile::tabulate(double r_max, std::size_t count) const {
  if (count == 0) count = static_cast<std::size_t>(std::ceil(r_max * table_density_)) + 1;
  if (count < 2) count = 2;
  std::vector<Sample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double r = r_max * static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back({r, chi(r), phi(r)});
  }
  return out;
}

void CutoffProfile::write_csv(std::ostream& os, std::size_t count, double r_max) const {
  os << "radius,chi,phi\n" << std::setprecision(17);
  for (const auto& s : tabulate(r_max, count)) os << s.radius << ',' << s.chi << ',' << s.phi << '\n';
}

CutoffProfile build_cutoffs(double smoothing) { return CutoffProfile(1e4 * smoothing); }

BandRange band_range(const GridSpec& grid) {
  grid.validate();
  const double kmin = grid.k_min();
  const double kmax = grid.k_max();
  const double ksphere = grid.k_nyquist_sphere();
  BandRange b;
  int j = 0;
  while (std::ldexp(CutoffProfile::kPhiOuter, j) > kmin) --j;
  while (std::ldexp(CutoffProfile::kPhiOuter, j) <= kmin) ++j;
  b.j_min = j;
  while (std::ldexp(CutoffProfile::kInner, j + 1) < kmax) ++j;
  b.j_max = j;
  int p = b.j_min;
  while (std::ldexp(CutoffProfile::kPhiOuter, p) <= ksphere) ++p;
  b.first_partial = p;
  return b;
}

LittlewoodPaley::LittlewoodPaley(const GridSpec& grid, CutoffProfile profile)
    : grid_(grid), profile_(profile), bands_(band_range(grid)) {
  table_size_ = static_cast<std::size_t>(mode_table(grid_)->max_m2()) + 1;
}

std::shared_ptr<const std::vector<double>> LittlewoodPaley::chi_table(int j) const {
  std::lock_guard lock(mutex_);
  auto it = chi_cache_.find(j);
  if (it != chi_cache_.end()) return it->second;
  auto table = std::make_shared<std::vector<double>>(table_size_);
  const double k0 = grid_.k_unit();
  for (std::size_t m2 = 0; m2 < table_size_; ++m2) {
    double r = std::ldexp(k0 * std::sqrt(static_cast<double>(m2)), -j);
    (*table)[m2] = profile_.chi(r);
  }
  chi_cache_.emplace(j, table);
  return table;
}

std::shared_ptr<const std::vector<double>> LittlewoodPaley::phi_table(int j) const {
  {
    std::lock_guard lock(mutex_);
    auto it = phi_cache_.find(j);
    if (it != phi_cache_.end()) return it->second;
  }
  auto outer = chi_table(j + 1);
  auto inner = chi_table(j);
  auto table = std::make_shared<std::vector<double>>(table_size_);
  for (std::size_t m2 = 0; m2 < table_size_; ++m2) (*table)[m2] = (*outer)[m2] - (*inner)[m2];
  std::lock_guard lock(mutex_);
  auto [it, inserted] = phi_cache_.emplace(j, table);
  return it->second;
}

SpectralField LittlewoodPaley::low(int j, const SpectralField& u) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("LittlewoodPaley::low: grid mismatch");
  return apply_radial(u, *chi_table(j));
}

SpectralField LittlewoodPaley::delta(int j, const SpectralField& u) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("LittlewoodPaley::delta: grid mismatch");
  return apply_radial(u, *phi_table(j));
}

SpectralField s_proj(const LittlewoodPaley& lp, int j, const SpectralField& u) { return lp.low(j, u); }
SpectralField delta_proj(const LittlewoodPaley& lp, int j, const SpectralField& u) { return lp.delta(j, u); }

namespace {

GridFunction to_physical_or_empty(const SpectralField& f) {
  for (const auto& c : f.data()) {
    if (c != cplx(0.0, 0.0)) return inverse_transform(f);
  }
  GridFunction empty;
  empty.grid = f.grid();
  empty.components = f.components();
  return empty;
}

}  // namespace

BandPieces band_pieces(const LittlewoodPaley& lp, const SpectralField& u, bool with_low) {
  BandPieces out;
  out.grid = u.grid();
  out.components = u.components();
  out.j_min = lp.bands().j_min;
  for (int j = lp.bands().j_min; j <= lp.bands().j_max; ++j) {
    out.delta.push_back(to_physical_or_empty(lp.delta(j, u)));
    if (with_low) out.low.push_back(to_physical_or_empty(lp.low(j - 1, u)));
  }
  return out;
}

BernsteinReport verify_bernstein(const LittlewoodPaley& lp, int j, const SpectralField& u, Lebesgue p,
                                 Lebesgue q, double lambda) {
  BernsteinReport rep;
  const int n = u.grid().n;
  const double full = lp_norm(u, p);
  const SpectralField band = lp.delta(j, u);
  const double band_p = lp_norm(band, p);
  if (full > 0.0) {
    rep.low_over_full = lp_norm(lp.low(j, u), p) / full;
    rep.band_over_full = band_p / full;
  }
  if (band_p == 0.0) return rep;

  const auto modes = mode_table(u.grid());
  const double k0 = u.grid().k_unit();
  std::vector<double> rho(static_cast<std::size_t>(modes->max_m2()) + 1, 0.0);
  for (std::size_t m2 = 1; m2 < rho.size(); ++m2) rho[m2] = std::pow(k0 * std::sqrt(static_cast<double>(m2)), lambda);
  const double scale = std::ldexp(1.0, j);
  const double dimension_factor = std::pow(scale, lambda + n * (p.inverse() - q.inverse()));
  rep.derivative_ratio = lp_norm(apply_radial(band, rho), q) / (dimension_factor * band_p);

  SpectralField grad(u.grid(), n * u.components());
  for (int c = 0; c < u.components(); ++c)
    for (int a = 0; a < n; ++a) grad.assign(c * n + a, derivative(band.extract(c), a));
  const double grad_p = lp_norm(grad, p);
  if (grad_p > 0.0) rep.inverse_ratio = band_p / (grad_p / scale);
  return rep;
}

}  // namespace lpb
