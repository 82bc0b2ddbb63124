#include "lpb/blowup_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "lpb/bony.hpp"
#include "lpb/spectral.hpp"

namespace lpb {

std::pair<double, double> index_interval(int n, double eps, double r) {
  const double top = 2.0 * n / r;
  const double lo = std::max(top - 4.0 / r, top - 2.0 + eps);
  const double hi = std::min(top, top - 2.0 / r + eps);
  return {lo, hi};
}

IndexSelection select_indices(int n, double eps, double r, double position) {
  if (n < 3) throw std::invalid_argument("select_indices: n >= 3 required");
  if (!(eps >= 1.0 && eps <= 2.0)) throw std::invalid_argument("select_indices: eps must lie in [1, 2]");
  if (!(r >= 2.0) || !std::isfinite(r)) throw std::invalid_argument("select_indices: r must lie in [2, inf)");
  if (!(position > 0.0 && position < 1.0)) throw std::invalid_argument("select_indices: position must lie in (0, 1)");

  IndexSelection sel;
  sel.n = n;
  sel.eps = eps;
  sel.r = r;
  sel.lambda = (eps - 0.5) / (eps - 1.0 + 0.5 * n);
  if (eps == 2.0) {
    sel.r_tilde = 1.0;
    return sel;
  }
  if (!(r < n / (2.0 - eps))) throw std::invalid_argument("select_indices: r must lie below n / (2 - eps)");
  sel.r_tilde = r;

  const auto [lo, hi] = index_interval(n, eps, r);
  if (!(lo < hi)) throw std::logic_error("select_indices: empty index interval");
  ExponentChain c;
  c.interval_lo = lo;
  c.interval_hi = hi;
  const double point = lo + position * (hi - lo);
  c.r1 = 2.0 * n / point;
  const double inv_r2 = (n / c.r1 - sel.s_r() - eps + 1.0) / n;
  c.r2 = 1.0 / inv_r2;
  c.r3 = c.r1 * c.r2 / (c.r1 + c.r2);
  const double r3_conj = c.r3 / (c.r3 - 1.0);
  c.r4 = r3_conj * (r - 1.0);
  c.r5 = r * n / (n - 2.0);
  const double floor_term = (n - 2.0) / (r * n);
  c.mu = 0.5 * r * n * (1.0 / c.r4 - floor_term);
  c.nu = 0.5 * r * n * (1.0 / c.r1 - floor_term);
  sel.chain = c;

  const double lower = r * n / (n + 2.0 * (r - 1.0));
  if (!(lower < c.r3 && c.r3 < r && r < c.r1 && c.r1 < c.r5))
    throw std::logic_error("select_indices: ordering rn/(n+2(r-1)) < r3 < r < r1 < rn/(n-2) violated");
  if (!(r < c.r4 && c.r4 < c.r5)) throw std::logic_error("select_indices: r < r4 < rn/(n-2) violated");
  if (!(c.mu > 0.0 && c.mu < 1.0 && c.nu > 0.0 && c.nu < 1.0))
    throw std::logic_error("select_indices: interpolation weights outside (0, 1)");
  if (!(inv_r2 > 0.0 && inv_r2 <= 1.0)) throw std::logic_error("select_indices: r2 outside [1, inf)");
  if (exponent_identity_residual(sel) > 1e-12 * (1.0 + 0.5 * r * eps)) throw std::logic_error("select_indices: exponent identity fails");
  return sel;
}

double exponent_identity_residual(const IndexSelection& sel) {
  if (!sel.chain) throw std::invalid_argument("exponent_identity_residual: eps = 2 has no exponent chain");
  const auto& c = *sel.chain;
  return std::abs((sel.r - 1.0) * c.mu + 2.0 * c.nu - 1.0 - 0.5 * sel.r * sel.eps);
}

ScalingExponents scaling_exponents(double r, double eps) { return {1.0 + 0.5 * r * eps, 0.5 * r * (2.0 - eps)}; }

NuBranch nu_branch(const IndexSelection& sel) {
  if (!sel.chain) throw std::invalid_argument("nu_branch: eps = 2 has no exponent chain");
  const auto& c = *sel.chain;
  NuBranch out;
  out.nu = c.nu;
  out.r2_at_least_r5 = c.r2 >= c.r5;
  if (out.r2_at_least_r5) return out;
  // Geometric step between s_{r2} + eps - 1 = n/r1 - n/r and s_r + eps - 1 at the target regularity 0.
  const double a = sel.n / c.r1 - sel.n / sel.r;
  const double b = sel.vorticity_regularity();
  out.rho = b / (b - a);
  // Hoelder step 1/r2 = sigma/r + (1 - sigma)/r5.
  out.sigma = (1.0 / c.r2 - 1.0 / c.r5) / (1.0 / sel.r - 1.0 / c.r5);
  return out;
}

namespace {

std::vector<GridFunction> physical_components(const SpectralField& f) {
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(f.components()));
  for (int c = 0; c < f.components(); ++c) out.push_back(inverse_transform(f.extract(c)));
  return out;
}

// h^n sum_x sum_c a_c |b|^{r-2} b_c with |b| the pointwise Frobenius magnitude of b.
double weighted_pairing(const GridFunction& a, const GridFunction& b, double r) {
  const std::size_t pts = b.points();
  double sum = 0.0;
  for (std::size_t i = 0; i < pts; ++i) {
    double mag2 = 0.0, dot = 0.0;
    for (int c = 0; c < b.components; ++c) {
      const double bv = b.component(c)[i];
      mag2 += bv * bv;
      dot += a.component(c)[i] * bv;
    }
    if (dot == 0.0) continue;
    sum += (r == 2.0 ? 1.0 : std::pow(mag2, 0.5 * (r - 2.0))) * dot;
  }
  return sum * b.grid.cell_volume();
}

double pow_norm(const GridFunction& f, Lebesgue p, double power) { return std::pow(lp_norm(f, p), power); }

}  // namespace

OmegaOperator::OmegaOperator(const LittlewoodPaley& lp, const SpectralField& u)
    : lp_(lp), omega_(vorticity_from_velocity(u)) {
  const GridSpec& grid = u.grid();
  const int n = grid.n;
  u_phys_ = physical_components(u);
  const auto grad_u = physical_components(jacobian(u));  // d_k u_j at k*n + j
  const auto w_phys = physical_components(omega_);
  global_ = SpectralField(grid, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const SpectralField wij = omega_.extract(i * n + j);
      ProductAccumulator acc(grid);
      for (int k = 0; k < n; ++k) {
        acc.add(u_phys_[static_cast<std::size_t>(k)], inverse_transform(derivative(wij, k)));
        acc.add(w_phys[static_cast<std::size_t>(i * n + k)], grad_u[static_cast<std::size_t>(k * n + j)], 2.0);
      }
      global_.assign(i * n + j, acc.finish());
    }
  }
}

SpectralField OmegaOperator::at(int j) const {
  const GridSpec& grid = omega_.grid();
  const int n = grid.n;
  SpectralField out(grid, n * n);
  for (int c = 0; c < n * n; ++c) {
    const SpectralField band = lp_.delta(j, omega_.extract(c));
    ProductAccumulator adv(grid);
    for (int k = 0; k < n; ++k) adv.add(u_phys_[static_cast<std::size_t>(k)], inverse_transform(derivative(band, k)));
    out.assign(c, adv.finish() - lp_.delta(j, global_.extract(c)));
  }
  return out;
}

EnergyBudget energy_budget(const LittlewoodPaley& lp, const SolverState& a, const SolverState& b, double r,
                           double eps) {
  a.u.require_same_grid(b.u, "energy_budget");
  if (!(a.u.grid() == lp.grid())) throw std::invalid_argument("energy_budget: grid mismatch");
  const int n = lp.grid().n;
  if (n < 3) throw std::invalid_argument("energy_budget: n >= 3 required");
  if (!(b.t > a.t)) throw std::invalid_argument("energy_budget: needs two consecutive states with increasing t");
  if (!(r >= 2.0) || !std::isfinite(r)) throw std::invalid_argument("energy_budget: r must lie in [2, inf)");
  if (!(eps >= 1.0 && eps <= 2.0)) throw std::invalid_argument("energy_budget: eps must lie in [1, 2]");

  const double dt = b.t - a.t;
  const SpectralField um = 0.5 * (a.u + b.u);
  const OmegaOperator omega_op(lp, um);
  const SpectralField& wm = omega_op.vorticity();
  const SpectralField wa = vorticity_from_velocity(a.u);
  const SpectralField wb = vorticity_from_velocity(b.u);
  const Lebesgue pr(r);
  const Lebesgue r5(r * n / (n - 2.0));
  const double s_r = -1.0 + n / r;
  const double sigma = s_r + eps - 1.0;

  EnergyBudget out;
  out.t = 0.5 * (a.t + b.t);
  out.r = r;
  out.eps = eps;
  double norm_rr = 0.0, norm_r5 = 0.0, ladder_mid = 0.0;
  for (int j = lp.bands().j_min; j <= lp.bands().j_max; ++j) {
    BudgetBand band;
    band.j = j;
    const SpectralField dm = lp.delta(j, wm);
    const GridFunction dm_phys = inverse_transform(dm);
    const double mid_norm = lp_norm(dm_phys, pr);
    if (mid_norm < kBandFloor) {
      band.skipped = true;
      out.bands.push_back(band);
      continue;
    }
    band.norm_a = lp_norm(lp.delta(j, wa), pr);
    band.norm_b = lp_norm(lp.delta(j, wb), pr);
    band.rate = (std::pow(band.norm_b, r) - std::pow(band.norm_a, r)) / dt;
    band.viscous = -weighted_pairing(inverse_transform(laplacian(dm)), dm_phys, r);
    band.dissipation = pow_norm(dm_phys, r5, r);
    const GridFunction omega_j = inverse_transform(omega_op.at(j));
    band.pairing = weighted_pairing(omega_j, dm_phys, r);
    band.omega_norm = lp_norm(omega_j, pr);

    const double w = std::exp2(j * r * sigma);
    out.balance_defect += w * (band.rate / r + band.viscous - band.pairing);
    out.balance_scale += w * (std::abs(band.rate / r) + std::abs(band.viscous) + std::abs(band.pairing));
    if (eps < 2.0) {
      out.lhs += w * band.rate;
      out.dissipation += w * band.dissipation;
      out.rhs += w * band.pairing;
      norm_rr += w * std::pow(mid_norm, r);
      norm_r5 += w * band.dissipation;
    } else {
      const double w1 = std::exp2(j * (s_r + 1.0));
      out.lhs += w1 * (band.norm_b - band.norm_a) / dt;
      out.rhs += w1 * band.omega_norm;
      ladder_mid += w1 * mid_norm;
    }
    out.bands.push_back(band);
  }

  if (out.rhs != 0.0) out.ratio = (out.lhs + out.dissipation) / out.rhs;
  if (eps < 2.0) {
    const auto [alpha, beta] = scaling_exponents(r, eps);
    const double den = std::pow(norm_rr, alpha / r) * std::pow(norm_r5, beta / r);
    if (den > 0.0) out.bound_ratio = out.rhs / den;
  } else if (ladder_mid > 0.0) {
    out.bound_ratio = out.rhs / (ladder_mid * ladder_mid);
  }
  return out;
}

namespace {

// Applies out[m] = sum_i matrix[m * N + i] in[i] along one axis of an N^n array.
void apply_axis(const GridSpec& grid, int axis, const std::vector<cplx>& matrix, std::vector<cplx>& data) {
  const std::size_t N = static_cast<std::size_t>(grid.N);
  std::size_t stride = 1;
  for (int a = grid.n - 1; a > axis; --a) stride *= N;
  const std::size_t block = stride * N;
  const std::size_t outer = data.size() / block;
  std::vector<cplx> line(N), result(N);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * block + s;
      bool empty = true;
      for (std::size_t i = 0; i < N; ++i) {
        line[i] = data[base + i * stride];
        if (line[i] != cplx(0.0, 0.0)) empty = false;
      }
      if (empty) continue;
      for (std::size_t m = 0; m < N; ++m) {
        const cplx* row = &matrix[m * N];
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < N; ++i) acc += row[i] * line[i];
        result[m] = acc;
      }
      for (std::size_t m = 0; m < N; ++m) data[base + m * stride] = result[m];
    }
  }
}

}  // namespace

SelfSimilarFamily::SelfSimilarFamily(const SpectralField& profile)
    : grid_(profile.grid()), components_(profile.components()) {
  if (!profile.zero_mean()) throw std::invalid_argument("synthetic family: profile must have zero mean");
  for (int c = 0; c < components_; ++c) samples_.push_back(inverse_transform(profile.extract(c)).values);
}

SpectralField SelfSimilarFamily::at_scale(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("synthetic family: scale must be positive");
  const int N = grid_.N;
  const int n = grid_.n;
  const double h = grid_.spacing();
  const double centre = 0.5 * grid_.L;
  const double k0 = grid_.k_unit();
  // Continuous transform of the profile about the box centre at xi = lambda k, one axis at a time.
  std::vector<cplx> matrix(static_cast<std::size_t>(N) * N);
  for (int idx = 0; idx < N; ++idx) {
    const int m = grid_.mode(idx);
    for (int i = 0; i < N; ++i) {
      const double phase = -lambda * k0 * m * (i * h - centre);
      matrix[static_cast<std::size_t>(idx) * N + i] = h * cplx(std::cos(phase), std::sin(phase));
    }
  }
  // c_m = L^{-n} lambda^{n-1} e^{-i k.c} U^(lambda k), and e^{-i k0 m L/2} = (-1)^m.
  const double scale = std::pow(grid_.L, -n) * std::pow(lambda, n - 1);
  const auto modes = mode_table(grid_);
  SpectralField out(grid_, components_);
  for (int c = 0; c < components_; ++c) {
    const auto& src = samples_[static_cast<std::size_t>(c)];
    std::vector<cplx> data(src.begin(), src.end());
    for (int axis = n - 1; axis >= 0; --axis) apply_axis(grid_, axis, matrix, data);
    auto dst = out.component(c);
    for (std::size_t idx = 0; idx < dst.size(); ++idx) {
      if (modes->nyquist(idx)) continue;
      int msum = 0;
      for (int a = 0; a < n; ++a) msum += modes->m(idx, a);
      dst[idx] = ((msum % 2 == 0) ? scale : -scale) * data[idx];
    }
  }
  return out;
}

double escaped_fraction(const SpectralField& u) {
  const auto modes = mode_table(u.grid());
  double outside = 0.0, total = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    const auto d = u.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      const double e = std::norm(d[idx]);
      total += e;
      if (!modes->retained(idx)) outside += e;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

std::vector<FamilySample> synthetic_blowup_family(const SelfSimilarFamily& family, const LittlewoodPaley& lp,
                                                  double T, std::span<const NormRequest> requests,
                                                  std::span<const double> times) {
  if (!(family.grid() == lp.grid())) throw std::invalid_argument("synthetic family: grid mismatch");
  const int n = lp.grid().n;
  std::vector<FamilySample> out;
  for (double t : times) {
    if (!(t < T)) throw std::invalid_argument("synthetic family: sample times must lie before T");
    FamilySample s;
    s.t = t;
    s.lambda = std::sqrt(T - t);
    const SpectralField u = family.at_scale(s.lambda);
    const double escaped = escaped_fraction(u);
    if (escaped > kEscapeTolerance) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "profile escapes resolved bands (energy fraction %.3e)", escaped);
      s.skip_reason = buf;
      out.push_back(std::move(s));
      continue;
    }
    const auto pieces = band_pieces(lp, u, false);
    std::map<double, BandProfile> profiles;
    for (const auto& req : requests) {
      const double key = req.p.value();
      auto it = profiles.find(key);
      if (it == profiles.end()) it = profiles.emplace(key, band_profile(pieces, req.p)).first;
      s.norms.push_back(it->second.weighted(req.regularity(n), req.q));
    }
    out.push_back(std::move(s));
  }
  return out;
}

SpectralField gaussian_profile(const GridSpec& grid, double width) {
  if (grid.n != 3) throw std::invalid_argument("gaussian_profile: n = 3 required");
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_profile: width must be positive");
  const double c = 0.5 * grid.L;
  auto potential = [&](int axis) {
    return forward_transform(sample(grid, [=](const Wavevector& x) {
      double r2 = 0.0;
      for (int a = 0; a < 3; ++a) r2 += (x[a] - c) * (x[a] - c);
      return std::exp(-0.5 * r2 / (width * width)) * (x[(axis + 1) % 3] - c) / width;
    }));
  };
  const SpectralField A0 = potential(0), A1 = potential(1), A2 = potential(2);
  SpectralField u(grid, 3);
  u.assign(0, derivative(A2, 1) - derivative(A1, 2));
  u.assign(1, derivative(A0, 2) - derivative(A2, 0));
  u.assign(2, derivative(A1, 0) - derivative(A0, 1));
  return u;
}

RateFit fit_rate(std::span<const double> times, std::span<const double> norms, double T) {
  if (times.size() != norms.size()) throw std::invalid_argument("fit_rate: size mismatch");
  if (times.size() < 5) throw std::invalid_argument("fit_rate: at least 5 samples required");
  const std::size_t m = times.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(times[i] < T)) throw std::invalid_argument("fit_rate: sample times must lie before T");
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("fit_rate: times must increase strictly");
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) throw std::invalid_argument("fit_rate: norms must be positive");
    x[i] = std::log(T - times[i]);
    y[i] = std::log(norms[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  RateFit fit;
  fit.samples = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ssr += e * e;
  }
  fit.residual = std::sqrt(ssr / static_cast<double>(m));
  fit.std_error = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  return fit;
}

double ode_lower_bound(double gamma, double c, double T, double t) {
  if (!(gamma > 0.0) || !(c > 0.0)) throw std::invalid_argument("ode_lower_bound: gamma and c must be positive");
  if (!(t < T)) throw std::invalid_argument("ode_lower_bound: t must lie before T");
  return std::pow(gamma * c * (T - t), -1.0 / gamma);
}

std::string to_string(OdeVerdict v) {
  switch (v) {
    case OdeVerdict::pass:
      return "pass";
    case OdeVerdict::fail:
      return "fail";
    case OdeVerdict::precondition_unmet:
      return "precondition-unmet";
  }
  return "unknown";
}

OdeLemmaReport verify_ode_lemma(std::span<const double> times, std::span<const double> values, double gamma,
                                double c, double T, double tolerance) {
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("verify_ode_lemma: need at least two samples");
  OdeLemmaReport rep;
  const std::size_t m = times.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (!(times[k] < T)) throw std::invalid_argument("verify_ode_lemma: sample times must lie before T");
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) throw std::invalid_argument("verify_ode_lemma: X must be positive");
    if (k > 0 && !(times[k] > times[k - 1])) throw std::invalid_argument("verify_ode_lemma: times must increase strictly");
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double slope = (values[k + 1] - values[k]) / (times[k + 1] - times[k]);
    const double cap = c * std::pow(std::max(values[k], values[k + 1]), 1.0 + gamma);
    if (slope > cap * (1.0 + tolerance)) {
      rep.verdict = OdeVerdict::precondition_unmet;
      rep.detail = "differential inequality violated at t = " + std::to_string(times[k]);
      return rep;
    }
  }
  const double y1 = std::pow(values[m - 2], -gamma);
  const double y2 = std::pow(values[m - 1], -gamma);
  const double dy = (y2 - y1) / (times[m - 1] - times[m - 2]);
  const double t_zero = dy < 0.0 ? times[m - 1] - y2 / dy : std::numeric_limits<double>::infinity();
  if (std::abs(t_zero - T) > tolerance * (T - times[0])) {
    rep.verdict = OdeVerdict::precondition_unmet;
    rep.detail = "trajectory does not diverge at T (extrapolated divergence at " + std::to_string(t_zero) + ")";
    return rep;
  }
  rep.worst_relative_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    const double bound = ode_lower_bound(gamma, c, T, times[k]);
    const double slack = (values[k] - bound) / bound;
    rep.worst_relative_slack = std::min(rep.worst_relative_slack, slack);
    if (slack < -tolerance && rep.verdict == OdeVerdict::pass) {
      rep.verdict = OdeVerdict::fail;
      rep.detail = "below the bound at t = " + std::to_string(times[k]);
    }
  }
  return rep;
}

QualitativeSample qualitative_blowup_monitor(const LittlewoodPaley& lp, const SpectralField& u, double eps) {
  const int n = lp.grid().n;
  const BandProfile prof = band_profile(lp, u, Lebesgue::infinity());
  const Lebesgue inf = Lebesgue::infinity();
  QualitativeSample s;
  s.b_half = prof.weighted(-0.5, inf);
  s.b_energy = prof.weighted(-0.5 * n, inf);
  s.b_eps = prof.weighted(-1.0 + eps, inf);
  s.b_zero = prof.weighted(0.0, inf);
  s.linf = lp_norm(u, inf);
  auto relative = [](double lhs, double rhs) { return rhs > 0.0 ? (rhs - lhs) / rhs : rhs - lhs; };
  s.lambda = (eps - 0.5) / (eps - 1.0 + 0.5 * n);
  s.slack = relative(s.b_half, std::pow(s.b_energy, s.lambda) * std::pow(s.b_eps, 1.0 - s.lambda));
  s.lambda_zero = (eps - 1.0) / (eps - 1.0 + 0.5 * n);
  if (s.lambda_zero > 0.0)
    s.slack_zero = relative(s.b_zero, std::pow(s.b_energy, s.lambda_zero) * std::pow(s.b_eps, 1.0 - s.lambda_zero));
  s.lebesgue_slack = relative(s.linf, prof.weighted(0.0, 1.0));
  return s;
}

}  // namespace lpb
