#include "lpb/field.hpp"

#include <algorithm>
#include <cmath>

namespace lpb {

SpectralField::SpectralField(const GridSpec& grid, int components)
    : grid_(grid), components_(components) {
  grid_.validate();
  if (components < 1) throw std::invalid_argument("field needs at least one component");
  points_ = grid_.points();
  coeffs_.assign(points_ * static_cast<std::size_t>(components), cplx(0.0, 0.0));
}

std::span<cplx> SpectralField::component(int c) {
  return std::span<cplx>(coeffs_).subspan(static_cast<std::size_t>(c) * points_, points_);
}

std::span<const cplx> SpectralField::component(int c) const {
  return std::span<const cplx>(coeffs_).subspan(static_cast<std::size_t>(c) * points_, points_);
}

bool SpectralField::zero_mean() const {
  for (int c = 0; c < components_; ++c) {
    double peak = 0.0;
    for (const auto& v : component(c)) peak = std::max(peak, std::norm(v));
    if (std::norm(mean(c)) > 1e-26 * peak) return false;
  }
  return true;
}

void SpectralField::require_same_grid(const SpectralField& other, const char* what) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other, "operator+=");
  if (components_ != other.components_) throw std::invalid_argument("operator+=: component mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other, "operator-=");
  if (components_ != other.components_) throw std::invalid_argument("operator-=: component mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralField SpectralField::extract(int c) const {
  SpectralField out(grid_, 1);
  auto src = component(c);
  std::copy(src.begin(), src.end(), out.component(0).begin());
  return out;
}

void SpectralField::assign(int c, const SpectralField& s) {
  require_same_grid(s, "assign");
  auto src = s.component(0);
  std::copy(src.begin(), src.end(), component(c).begin());
}

GridFunction::GridFunction(const GridSpec& g, int c) : grid(g), components(c) {
  grid.validate();
  values.assign(grid.points() * static_cast<std::size_t>(c), 0.0);
}

std::span<double> GridFunction::component(int c) {
  std::size_t p = points();
  return std::span<double>(values).subspan(static_cast<std::size_t>(c) * p, p);
}

std::span<const double> GridFunction::component(int c) const {
  std::size_t p = points();
  return std::span<const double>(values).subspan(static_cast<std::size_t>(c) * p, p);
}

double spectral_inner(const SpectralField& f, const SpectralField& g) {
  f.require_same_grid(g, "spectral_inner");
  if (f.components() != g.components()) throw std::invalid_argument("spectral_inner: component mismatch");
  auto a = f.data();
  auto b = g.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (std::conj(a[i]) * b[i]).real();
  return sum * f.grid().volume();
}

double spectral_l2(const SpectralField& f) {
  double sum = 0.0;
  for (const auto& c : f.data()) sum += std::norm(c);
  return std::sqrt(sum * f.grid().volume());
}

double max_abs_coeff(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.data()) m = std::max(m, std::abs(c));
  return m;
}

double relative_l2_error(const SpectralField& f, const SpectralField& g) {
  double denom = spectral_l2(g);
  double num = spectral_l2(f - g);
  return denom > 0.0 ? num / denom : num;
}

}  // namespace lpb
