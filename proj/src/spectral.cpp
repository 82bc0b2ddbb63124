#include "lpb/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fft.hpp"

namespace lpb {

SpectralField forward_transform(const GridFunction& f) {
  SpectralField out(f.grid, f.components);
  const double scale = 1.0 / static_cast<double>(f.grid.points());
  for (int c = 0; c < f.components; ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = cplx(src[i], 0.0);
    detail::fft_inplace(f.grid, dst, -1);
    for (auto& v : dst) v *= scale;
  }
  return out;
}

void inverse_component(const SpectralField& f, int c, std::span<double> out) {
  CoeffVector work(f.component(c).begin(), f.component(c).end());
  detail::fft_inplace(f.grid(), work, +1);
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
}

GridFunction inverse_transform(const SpectralField& f) {
  GridFunction out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) inverse_component(f, c, out.component(c));
  return out;
}

GridFunction sample(const GridSpec& grid, const std::function<double(const Wavevector&)>& f) {
  GridFunction out(grid, 1);
  const auto table = mode_table(grid);
  const double h = grid.spacing();
  const int N = grid.N;
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    Wavevector x{0.0, 0.0, 0.0};
    std::size_t rest = idx;
    for (int a = grid.n - 1; a >= 0; --a) {
      x[a] = h * static_cast<double>(rest % static_cast<std::size_t>(N));
      rest /= static_cast<std::size_t>(N);
    }
    out.values[idx] = f(x);
  }
  return out;
}

double lp_norm(const GridFunction& f, Lebesgue p) {
  const std::size_t pts = f.points();
  std::vector<double> mag(pts, 0.0);
  for (int c = 0; c < f.components; ++c) {
    auto v = f.component(c);
    for (std::size_t i = 0; i < pts; ++i) mag[i] += v[i] * v[i];
  }
  double peak = 0.0;
  for (auto& m : mag) {
    m = std::sqrt(m);
    peak = std::max(peak, m);
  }
  if (p.is_infinite() || peak == 0.0) return peak;
  const double pv = p.value();
  double sum = 0.0;
  for (double m : mag) sum += std::pow(m / peak, pv);
  return peak * std::pow(sum * f.grid.cell_volume(), 1.0 / pv);
}

double lp_norm(const SpectralField& f, Lebesgue p) { return lp_norm(inverse_transform(f), p); }

SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(const Wavevector&)>& m,
                               cplx m_zero) {
  SpectralField out(f.grid(), f.components());
  const auto table = mode_table(f.grid());
  const double k0 = f.grid().k_unit();
  std::vector<cplx> symbol(f.points());
  for (std::size_t idx = 0; idx < f.points(); ++idx) {
    if (table->m2(idx) == 0) {
      symbol[idx] = m_zero;
      continue;
    }
    Wavevector k{k0 * table->m(idx, 0), k0 * table->m(idx, 1), k0 * table->m(idx, 2)};
    cplx v = m(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error("apply_multiplier: symbol is not finite on a grid wavenumber");
    symbol[idx] = v;
  }
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t idx = 0; idx < src.size(); ++idx) dst[idx] = symbol[idx] * src[idx];
  }
  return out;
}

void apply_radial_inplace(SpectralField& f, std::span<const double> table) {
  const auto modes = mode_table(f.grid());
  if (table.size() <= static_cast<std::size_t>(modes->max_m2()))
    throw std::invalid_argument("apply_radial: table too short");
  for (int c = 0; c < f.components(); ++c) {
    auto d = f.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) d[idx] *= table[modes->m2(idx)];
  }
}

SpectralField apply_radial(const SpectralField& f, std::span<const double> table) {
  SpectralField out = f;
  apply_radial_inplace(out, table);
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis < 0 || axis >= f.grid().n) throw std::invalid_argument("derivative: bad axis");
  SpectralField out(f.grid(), f.components());
  const auto modes = mode_table(f.grid());
  const double k0 = f.grid().k_unit();
  const int nyq = -f.grid().N / 2;
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t idx = 0; idx < src.size(); ++idx) {
      int m = modes->m(idx, axis);
      dst[idx] = m == nyq ? cplx(0.0, 0.0) : cplx(0.0, k0 * m) * src[idx];
    }
  }
  return out;
}

SpectralField gradient(const SpectralField& f) {
  if (f.components() != 1) throw std::invalid_argument("gradient: scalar field expected");
  const int n = f.grid().n;
  SpectralField out(f.grid(), n);
  for (int a = 0; a < n; ++a) out.assign(a, derivative(f, a));
  return out;
}

SpectralField jacobian(const SpectralField& u) {
  const int n = u.grid().n;
  if (u.components() != n) throw std::invalid_argument("jacobian: vector field expected");
  SpectralField out(u.grid(), n * n);
  for (int b = 0; b < n; ++b) {
    const SpectralField ub = u.extract(b);
    for (int a = 0; a < n; ++a) out.assign(a * n + b, derivative(ub, a));
  }
  return out;
}

SpectralField divergence(const SpectralField& u) {
  const int n = u.grid().n;
  if (u.components() != n) throw std::invalid_argument("divergence: vector field expected");
  SpectralField out(u.grid(), 1);
  for (int a = 0; a < n; ++a) out += derivative(u.extract(a), a);
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const auto modes = mode_table(f.grid());
  const double k02 = f.grid().k_unit() * f.grid().k_unit();
  std::vector<double> table(static_cast<std::size_t>(modes->max_m2()) + 1);
  for (std::size_t m2 = 0; m2 < table.size(); ++m2) table[m2] = -k02 * static_cast<double>(m2);
  return apply_radial(f, table);
}

SpectralField inverse_laplacian(const SpectralField& f) {
  if (!f.zero_mean()) throw std::invalid_argument("inverse_laplacian: zero mode must vanish");
  const auto modes = mode_table(f.grid());
  const double k02 = f.grid().k_unit() * f.grid().k_unit();
  std::vector<double> table(static_cast<std::size_t>(modes->max_m2()) + 1, 0.0);
  for (std::size_t m2 = 1; m2 < table.size(); ++m2) table[m2] = 1.0 / (k02 * static_cast<double>(m2));
  return apply_radial(f, table);
}

SpectralField leray_project(const SpectralField& u) {
  const int n = u.grid().n;
  if (u.components() != n) throw std::invalid_argument("leray_project: vector field expected");
  if (!u.zero_mean()) throw std::invalid_argument("leray_project: zero mode must vanish");
  SpectralField out = u;
  const auto modes = mode_table(u.grid());
  std::array<std::span<cplx>, 3> c{};
  for (int a = 0; a < n; ++a) c[a] = out.component(a);
  for (std::size_t idx = 0; idx < u.points(); ++idx) {
    const std::int32_t m2 = modes->m2(idx);
    if (m2 == 0) continue;
    cplx dot(0.0, 0.0);
    for (int a = 0; a < n; ++a) dot += static_cast<double>(modes->m(idx, a)) * c[a][idx];
    dot /= static_cast<double>(m2);
    for (int a = 0; a < n; ++a) c[a][idx] -= static_cast<double>(modes->m(idx, a)) * dot;
  }
  return out;
}

void dealias_inplace(SpectralField& f) {
  const auto modes = mode_table(f.grid());
  for (int c = 0; c < f.components(); ++c) {
    auto d = f.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx)
      if (!modes->retained(idx)) d[idx] = cplx(0.0, 0.0);
  }
}

bool spectrum_within(const SpectralField& f, int limit) {
  const auto modes = mode_table(f.grid());
  for (std::size_t idx = 0; idx < f.points(); ++idx) {
    bool inside = true;
    for (int a = 0; a < f.grid().n; ++a)
      if (std::abs(modes->m(idx, a)) > limit) inside = false;
    if (inside) continue;
    for (int c = 0; c < f.components(); ++c)
      if (f.component(c)[idx] != cplx(0.0, 0.0)) return false;
  }
  return true;
}

double hermitian_defect(const SpectralField& f) {
  const auto modes = mode_table(f.grid());
  double worst = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto d = f.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      worst = std::max(worst, std::abs(d[idx] - std::conj(d[modes->partner(idx)])));
    }
  }
  return worst;
}

}  // namespace lpb
