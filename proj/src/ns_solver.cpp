#include "lpb/ns_solver.hpp"

#include <array>
#include <cmath>

#include "lpb/bony.hpp"
#include "lpb/spectral.hpp"

namespace lpb {

BlowupSuspected::BlowupSuspected(SolverState last)
    : std::runtime_error("blow-up suspected: non-finite velocity at t = " + std::to_string(last.t)),
      last_(std::move(last)) {}

namespace {

void require_vector(const SpectralField& u, const char* what) {
  if (u.components() != u.grid().n) throw std::invalid_argument(std::string(what) + ": vector field expected");
}

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.data())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField scaled(const SpectralField& f, std::span<const double> table) { return apply_radial(f, table); }

}  // namespace

SpectralField velocity_products(const SpectralField& u) {
  require_vector(u, "velocity_products");
  const int n = u.grid().n;
  const GridFunction phys = inverse_transform(u);
  std::vector<GridFunction> comps;
  for (int a = 0; a < n; ++a) {
    GridFunction c(u.grid(), 1);
    auto src = phys.component(a);
    std::copy(src.begin(), src.end(), c.values.begin());
    comps.push_back(std::move(c));
  }
  SpectralField out(u.grid(), n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      ProductAccumulator acc(u.grid());
      acc.add(comps[i], comps[k]);
      const SpectralField p = acc.finish();
      out.assign(i * n + k, p);
      if (k != i) out.assign(k * n + i, p);
    }
  }
  return out;
}

SpectralField nonlinear_term(const SpectralField& u) {
  require_vector(u, "nonlinear_term");
  const int n = u.grid().n;
  const double k0 = u.grid().k_unit();
  const SpectralField uu = velocity_products(u);
  const auto modes = mode_table(u.grid());
  SpectralField out(u.grid(), n);
  std::array<std::span<cplx>, 3> o{};
  std::array<std::span<const cplx>, 9> p{};
  for (int a = 0; a < n; ++a) o[a] = out.component(a);
  for (int c = 0; c < n * n; ++c) p[c] = uu.component(c);
  for (std::size_t idx = 0; idx < out.points(); ++idx) {
    const std::int32_t m2 = modes->m2(idx);
    if (m2 == 0) continue;
    // w_i = d_k (u_k u_i), then w - m (m.w) / |m|^2, negated.
    std::array<cplx, 3> w{};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) w[i] += cplx(0.0, k0 * modes->m(idx, k)) * p[k * n + i][idx];
    cplx dot(0.0, 0.0);
    for (int a = 0; a < n; ++a) dot += static_cast<double>(modes->m(idx, a)) * w[a];
    dot /= static_cast<double>(m2);
    for (int a = 0; a < n; ++a) o[a][idx] = static_cast<double>(modes->m(idx, a)) * dot - w[a];
  }
  return out;
}

SpectralField compute_pressure(const SpectralField& u) {
  require_vector(u, "compute_pressure");
  const int n = u.grid().n;
  const SpectralField uu = velocity_products(u);
  SpectralField src(u.grid(), 1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) src += derivative(derivative(uu.extract(i * n + k), i), k);
  return inverse_laplacian(src);
}

double cfl_number(const SpectralField& u, double dt) {
  const double umax = lp_norm(u, Lebesgue::infinity());
  return dt * umax * u.grid().N / u.grid().L;
}

NavierStokesSolver::NavierStokesSolver(const GridSpec& grid, double dt) : grid_(grid), dt_(dt) {
  grid.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solver.dt must be positive");
  const auto modes = mode_table(grid);
  const double k02 = grid.k_unit() * grid.k_unit();
  const std::size_t size = static_cast<std::size_t>(modes->max_m2()) + 1;
  full_.resize(size);
  half_.resize(size);
  for (std::size_t m2 = 0; m2 < size; ++m2) {
    full_[m2] = std::exp(-k02 * static_cast<double>(m2) * dt);
    half_[m2] = std::exp(-0.5 * k02 * static_cast<double>(m2) * dt);
  }
}

SolverState NavierStokesSolver::step(const SolverState& s) const {
  require_vector(s.u, "step");
  if (!(s.u.grid() == grid_)) throw std::invalid_argument("step: grid mismatch");
  const double h = dt_;
  const SpectralField& u = s.u;

  const SpectralField a = nonlinear_term(u);
  const SpectralField b = nonlinear_term(scaled(u + (0.5 * h) * a, half_));
  const SpectralField eu_half = scaled(u, half_);
  const SpectralField c = nonlinear_term(eu_half + (0.5 * h) * b);
  const SpectralField eu = scaled(u, full_);
  const SpectralField d = nonlinear_term(eu + h * scaled(c, half_));

  SpectralField incr = scaled(a, full_) + 2.0 * scaled(b + c, half_) + d;
  SolverState out{s.t + h, eu + (h / 6.0) * incr};
  if (!all_finite(out.u)) throw BlowupSuspected(s);
  return out;
}

SolverState step(const SolverState& s, double dt) { return NavierStokesSolver(s.u.grid(), dt).step(s); }

SpectralField taylor_green(const GridSpec& grid) {
  grid.validate();
  // Coefficients at (a, b, 0) with a, b = +-1: -i a / 4 for sin x1 cos x2, i b / 4 for -cos x1 sin x2.
  SpectralField u(grid, grid.n);
  const auto N = static_cast<std::size_t>(grid.N);
  auto wrap = [N](int m) { return static_cast<std::size_t>(m < 0 ? static_cast<int>(N) + m : m); };
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      const std::size_t idx = grid.n == 3 ? (wrap(a) * N + wrap(b)) * N : wrap(a) * N + wrap(b);
      u.component(0)[idx] = cplx(0.0, -0.25 * a);
      u.component(1)[idx] = cplx(0.0, 0.25 * b);
    }
  }
  return u;
}

double taylor_green_rate(const GridSpec& grid) { return 2.0 * grid.k_unit() * grid.k_unit(); }

SpectralField vorticity_from_velocity(const SpectralField& u) {
  require_vector(u, "vorticity_from_velocity");
  const int n = u.grid().n;
  const SpectralField J = jacobian(u);
  SpectralField omega(u.grid(), n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const SpectralField w = J.extract(i * n + j) - J.extract(j * n + i);
      omega.assign(i * n + j, w);
      omega.assign(j * n + i, -1.0 * w);
    }
  }
  return omega;
}

SpectralField velocity_from_vorticity(const SpectralField& omega) {
  const int n = omega.grid().n;
  if (omega.components() != n * n) throw std::invalid_argument("velocity_from_vorticity: tensor field expected");
  SpectralField u(omega.grid(), n);
  for (int i = 0; i < n; ++i) {
    SpectralField s(omega.grid(), 1);
    for (int j = 0; j < n; ++j) s += derivative(omega.extract(i * n + j), j);
    u.assign(i, inverse_laplacian(s));
  }
  return u;
}

SpectralField vorticity_vector(const SpectralField& omega) {
  if (omega.grid().n != 3 || omega.components() != 9)
    throw std::invalid_argument("vorticity_vector: 3-D tensor expected");
  SpectralField w(omega.grid(), 3);
  w.assign(0, omega.extract(1 * 3 + 2));
  w.assign(1, omega.extract(2 * 3 + 0));
  w.assign(2, omega.extract(0 * 3 + 1));
  return w;
}

SpectralField vorticity_residual_field(const SolverState& a, const SolverState& b) {
  a.u.require_same_grid(b.u, "vorticity_equation_residual");
  if (!(b.t > a.t)) throw std::invalid_argument("vorticity_equation_residual: needs two states with increasing t");
  const GridSpec& grid = a.u.grid();
  const int n = grid.n;
  const double dt = b.t - a.t;
  const SpectralField w0 = vorticity_from_velocity(a.u);
  const SpectralField w1 = vorticity_from_velocity(b.u);
  const SpectralField um = 0.5 * (a.u + b.u);
  const SpectralField wm = 0.5 * (w0 + w1);

  SpectralField res = (1.0 / dt) * (w1 - w0) - laplacian(wm);

  std::vector<GridFunction> uphys, grad_u, wphys;
  auto physical = [&](const SpectralField& f) { return inverse_transform(f); };
  for (int k = 0; k < n; ++k) uphys.push_back(physical(um.extract(k)));
  const SpectralField J = jacobian(um);  // d_k u_j at k*n + j
  for (int c = 0; c < n * n; ++c) grad_u.push_back(physical(J.extract(c)));
  for (int c = 0; c < n * n; ++c) wphys.push_back(physical(wm.extract(c)));

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ProductAccumulator acc(grid);
      const SpectralField wij = wm.extract(i * n + j);
      for (int k = 0; k < n; ++k) {
        acc.add(uphys[k], physical(derivative(wij, k)));
        acc.add(wphys[i * n + k], grad_u[k * n + j]);
        acc.add(wphys[j * n + k], grad_u[k * n + i], -1.0);
      }
      SpectralField comp = res.extract(i * n + j) + acc.finish();
      res.assign(i * n + j, comp);
    }
  }
  return res;
}

double vorticity_equation_residual(const SolverState& a, const SolverState& b) {
  return spectral_l2(vorticity_residual_field(a, b));
}

double energy(const SpectralField& u) {
  const double l2 = spectral_l2(u);
  return 0.5 * l2 * l2;
}

double enstrophy(const SpectralField& u) {
  const double l2 = spectral_l2(vorticity_from_velocity(u));
  return 0.25 * l2 * l2;
}

double resolution_fraction(const SpectralField& u) {
  const auto modes = mode_table(u.grid());
  const int n = u.grid().n;
  const int edge = u.grid().N / 4;
  double outer = 0.0, total = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    auto d = u.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      const double e = std::norm(d[idx]);
      total += e;
      for (int a = 0; a < n; ++a) {
        if (std::abs(modes->m(idx, a)) > edge) {
          outer += e;
          break;
        }
      }
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace lpb
