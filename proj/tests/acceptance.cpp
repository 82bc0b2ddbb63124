// Acceptance criteria 1-9. One PASS/FAIL line per criterion; exit status 1 if any criterion fails.
// An optional argument list (e.g. "C1 C4") restricts the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpb/blowup_diagnostics.hpp"
#include "lpb/bony.hpp"
#include "lpb/commutator.hpp"
#include "lpb/random.hpp"
#include "lpb/spectral.hpp"

using namespace lpb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects named sub-checks; the criterion passes when all do.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failed_.size() < 8) failed_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome outcome() const {
    Outcome o;
    o.pass = pass_;
    for (const auto& n : notes_) o.detail += (o.detail.empty() ? "" : "; ") + n;
    for (const auto& f : failed_) o.detail += "; failed: " + f;
    return o;
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> failed_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

GridSpec grid3(int N, double L = 2.0 * kPi) { return GridSpec{3, N, L}; }

SpectralField safe_field(const GridSpec& g, std::uint64_t seed, const char* name, int components = 1,
                         bool solenoidal = false) {
  auto rng = SplitMix64::stream(seed, name);
  RandomFieldSpec spec;
  spec.components = components;
  spec.max_index = dealias_safe_index(g);
  spec.solenoidal = solenoidal;
  return random_field(g, spec, rng);
}

// ---------------------------------------------------------------------------------------------
// C1: exact identities over 200 dealias-safe fields at N = 64.

Outcome exact_identities() {
  constexpr int kFields = 200;
  constexpr double kTol = 1e-12;
  const auto start = Clock::now();
  const GridSpec g = grid3(64);
  const LittlewoodPaley lp(g);
  const BandRange& b = lp.bands();
  const auto modes = mode_table(g);
  Checks ck;

  double partition = 0.0;
  for (std::size_t idx = 1; idx < modes->size(); ++idx) {
    const double k = std::sqrt(static_cast<double>(modes->m2(idx))) * g.k_unit();
    double sum = 0.0;
    for (int j = b.j_min; j <= b.j_max; ++j) sum += lp.profile().phi(std::ldexp(k, -j));
    partition = std::max(partition, std::abs(sum - 1.0));
  }
  double table_partition = 0.0;
  for (std::int32_t m2 = 1; m2 <= modes->max_m2(); ++m2) {
    double sum = 0.0;
    for (int j = b.j_min; j <= b.j_max; ++j) sum += (*lp.phi_table(j))[static_cast<std::size_t>(m2)];
    table_partition = std::max(table_partition, std::abs(sum - 1.0));
  }
  ck.require(partition <= 1e-14, "partition of unity " + fmt("%.2e", partition));
  ck.require(table_partition <= 1e-14, "tabulated partition of unity " + fmt("%.2e", table_partition));

  double orth = 0.0, rec = 0.0, supp = 0.0, bony = 0.0, comm = 0.0, r6 = 0.0;
  for (int i = 0; i < kFields; ++i) {
    const auto seed = static_cast<std::uint64_t>(i);
    const SpectralField u = safe_field(g, seed, "acc-u");
    const SpectralField v = safe_field(g, seed, "acc-v");
    const double unorm = spectral_l2(u);

    std::vector<SpectralField> deltas;
    SpectralField sum(g, 1);
    for (int j = b.j_min; j <= b.j_max; ++j) {
      deltas.push_back(lp.delta(j, u));
      sum += deltas.back();
    }
    rec = std::max(rec, relative_l2_error(sum, u));
    for (int j = b.j_min; j <= b.j_max; ++j)
      for (int jp = b.j_min; jp <= b.j_max; ++jp)
        if (std::abs(j - jp) >= 2)
          orth = std::max(orth, spectral_l2(lp.delta(jp, deltas[static_cast<std::size_t>(j - b.j_min)])) / unorm);

    const auto u_pieces = band_pieces(lp, u, true);
    const auto v_pieces = band_pieces(lp, v, true);
    for (int j = b.j_min; j <= b.j_max; ++j) {
      const auto& low = u_pieces.low_before(j);
      const auto& band = v_pieces.band(j);
      if (BandPieces::is_zero(low) || BandPieces::is_zero(band)) continue;
      ProductAccumulator acc(g);
      acc.add(low, band);
      const SpectralField summand = acc.finish();
      const double norm = spectral_l2(summand);
      for (int jp = b.j_min; jp <= b.j_max; ++jp)
        if (std::abs(j - jp) >= 5) supp = std::max(supp, spectral_l2(lp.delta(jp, summand)) / norm);
    }

    bony = std::max(bony, bony_decompose(lp, u, v).identity_defect());

    const SpectralField w = safe_field(g, seed, "acc-w", 3, true);
    const int j = b.j_min + i % b.count();
    const auto pieces = decompose_commutator(lp, j, w, u);
    comm = std::max(comm, pieces.identity_defect());
    r6 = std::max(r6, spectral_l2(pieces.parts[5]));
  }
  const double elapsed = seconds_since(start);
  ck.require(orth <= kTol, "orthogonality " + fmt("%.2e", orth));
  ck.require(rec <= kTol, "reconstruction " + fmt("%.2e", rec));
  ck.require(supp <= kTol, "paraproduct support " + fmt("%.2e", supp));
  ck.require(bony <= kTol, "Bony identity " + fmt("%.2e", bony));
  ck.require(comm <= kTol, "commutator decomposition " + fmt("%.2e", comm));
  ck.require(r6 <= kTol, "R6 for solenoidal v " + fmt("%.2e", r6));
  ck.require(elapsed <= 300.0, "runtime " + fmt("%.0f s", elapsed));
  ck.note("200 fields, N=64: partition " + fmt("%.1e", std::max(partition, table_partition)) + ", orth " +
          fmt("%.1e", orth) + ", recon " + fmt("%.1e", rec) + ", support " + fmt("%.1e", supp) + ", bony " +
          fmt("%.1e", bony) + ", commutator " + fmt("%.1e", comm) + ", |R6| " + fmt("%.1e", r6) + ", " +
          fmt("%.0f s", elapsed));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// Shared 1000-field corpus at N = 32 for C2 and C8.

constexpr int kCorpusSize = 1000;
const GridSpec kCorpusGrid = grid3(32);

SpectralField corpus_member(int i) {
  auto rng = SplitMix64::stream(2024, "acceptance-corpus", static_cast<std::uint64_t>(i));
  RandomFieldSpec spec;
  spec.max_index = 1 + i % 15;
  spec.slope = 0.5 * (i % 5);
  return random_field(kCorpusGrid, spec, rng);
}

Outcome constant_one_inequalities() {
  constexpr double kTol = 1e-10;
  const auto start = Clock::now();
  const LittlewoodPaley lp(kCorpusGrid);
  Checks ck;
  double worst_lp = 1.0, worst_holder = 1.0, worst_traj = 1.0;
  const std::array<Lebesgue, 4> ps{1.0, 2.0, 4.0, Lebesgue::infinity()};
  const std::array<std::tuple<BesovParams, BesovParams, double>, 3> pairs{{
      {{-0.5, 2.0, 2.0}, {1.0, 2.0, 2.0}, 0.5},
      {{-0.5, 4.0, 1.0}, {1.0, 1.5, Lebesgue::infinity()}, 0.3},
      {{0.0, Lebesgue::infinity(), Lebesgue::infinity()}, {1.5, 2.0, 1.0}, 0.7},
  }};
  for (int i = 0; i < kCorpusSize; ++i) {
    const SpectralField u = corpus_member(i);
    const auto pieces = band_pieces(lp, u, false);
    for (Lebesgue p : ps) {
      const double lhs = lp_norm(u, p);
      const double rhs = band_profile(pieces, p).weighted(0.0, 1.0);
      worst_lp = std::min(worst_lp, (rhs - lhs) / rhs);
    }
    const auto& [a, bb, lam] = pairs[static_cast<std::size_t>(i) % pairs.size()];
    worst_holder = std::min(worst_holder, verify_interpolation_holder(lp, u, a, bb, lam).relative_slack());
  }

  // Interpolation slack along solver trajectories.
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp16(g);
  std::vector<SpectralField> starts{taylor_green(g)};
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto rng = SplitMix64::stream(s, "acceptance-trajectory");
    RandomFieldSpec spec;
    spec.components = 3;
    spec.max_index = 4;
    spec.solenoidal = true;
    spec.l2_target = 2.0;
    starts.push_back(random_field(g, spec, rng));
  }
  int samples = 0;
  for (const auto& u0 : starts) {
    const NavierStokesSolver solver(g, 2e-3);
    SolverState s{0.0, u0};
    for (int k = 0; k <= 40; ++k) {
      if (k % 4 == 0) {
        for (double eps : {1.0, 1.5, 2.0}) {
          const auto q = qualitative_blowup_monitor(lp16, s.u, eps);
          worst_traj = std::min(worst_traj, q.slack);
          if (q.slack_zero) worst_traj = std::min(worst_traj, *q.slack_zero);
          ++samples;
        }
      }
      s = solver.step(s);
    }
  }
  const double elapsed = seconds_since(start);
  ck.require(worst_lp >= -kTol, "L^p <= B^0_{p,1} slack " + fmt("%.2e", worst_lp));
  ck.require(worst_holder >= -kTol, "Holder interpolation slack " + fmt("%.2e", worst_holder));
  ck.require(worst_traj >= -kTol, "trajectory interpolation slack " + fmt("%.2e", worst_traj));
  ck.note("1000 fields, N=32: min slack L^p " + fmt("%.2e", worst_lp) + ", Holder " + fmt("%.2e", worst_holder) +
          ", trajectories (" + std::to_string(samples) + " samples) " + fmt("%.2e", worst_traj) + ", " +
          fmt("%.0f s", elapsed));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C3: exponent algebra over 10^4 random admissible (n, eps, r, r1).

Outcome exponent_algebra() {
  const auto start = Clock::now();
  Checks ck;
  auto rng = SplitMix64::stream(7, "acceptance-indices");
  double worst = 0.0;
  int ordering = 0, empty = 0, thrown = 0;
  for (int k = 0; k < 10000; ++k) {
    const int n = 3 + static_cast<int>(rng.uniform() * 4.0);
    const double eps = 1.0 + 0.999 * rng.uniform();
    const double r_max = n / (2.0 - eps);
    const double r = 2.0 + (r_max - 2.0) * (0.001 + 0.998 * rng.uniform());
    const double position = 0.01 + 0.98 * rng.uniform();
    const auto [lo, hi] = index_interval(n, eps, r);
    if (!(lo < hi)) ++empty;
    try {
      const IndexSelection sel = select_indices(n, eps, r, position);
      // Independent recomputation of the identity from the chain.
      const auto& c = *sel.chain;
      worst = std::max(worst, std::abs((r - 1.0) * c.mu + 2.0 * c.nu - (1.0 + r * eps / 2.0)));
      if (!(c.r3 < r && r < c.r1 && c.r1 < r * n / (n - 2.0))) ++ordering;
      if (!(2.0 * n / c.r1 > lo && 2.0 * n / c.r1 < hi)) ++ordering;
    } catch (const std::exception&) {
      ++thrown;
    }
  }
  const double elapsed = seconds_since(start);
  ck.require(worst <= 1e-12, "identity residual " + fmt("%.2e", worst));
  ck.require(ordering == 0, std::to_string(ordering) + " ordering violations");
  ck.require(empty == 0, std::to_string(empty) + " empty intervals");
  ck.require(thrown == 0, std::to_string(thrown) + " rejected admissible triples");
  ck.require(elapsed <= 10.0, "runtime " + fmt("%.1f s", elapsed));
  ck.note("10^4 draws: max residual " + fmt("%.2e", worst) + ", " + fmt("%.2f s", elapsed));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C4: blow-up rates of the self-similar family at N = 128.

Outcome blowup_rates() {
  const auto start = Clock::now();
  const GridSpec g = grid3(128);
  const LittlewoodPaley lp(g);
  const SelfSimilarFamily family(gaussian_profile(g, 0.5));
  const double T = 1.0;
  std::vector<double> times;
  for (int k = 0; k < 13; ++k) {
    const double lambda = std::pow(0.25, k / 12.0);
    times.push_back(T - lambda * lambda);
  }
  std::vector<NormRequest> req;
  const std::map<double, double> mid_p{{1.0, 2.5}, {1.25, 3.0}, {1.5, 4.0}, {1.75, 6.0}};
  for (const auto& [eps, p] : mid_p) {
    req.push_back({eps, 2.0, 2.0});
    req.push_back({eps, p, p});
  }
  req.push_back({2.0, 2.0, 1.0});
  req.push_back({2.0, 4.0, 1.0});
  const auto samples = synthetic_blowup_family(family, lp, T, req, times);

  Checks ck;
  std::string slopes;
  for (std::size_t r = 0; r < req.size(); ++r) {
    std::vector<double> ts, ns;
    for (const auto& s : samples)
      if (s.skip_reason.empty()) {
        ts.push_back(s.t);
        ns.push_back(s.norms[r]);
      }
    const double target = req[r].eps < 2.0 ? -0.5 * req[r].eps : -1.0;
    const RateFit fit = fit_rate(ts, ns, T);
    const std::string label = "eps=" + fmt("%g", req[r].eps) + " (" + req[r].p.str() + "," + req[r].q.str() + ")";
    ck.require(std::abs(fit.slope - target) <= 0.05, label + " slope " + fmt("%.4f", fit.slope));
    ck.require(ts.size() >= 5, label + " too few resolved samples");
    slopes += (slopes.empty() ? "" : ", ") + label + " " + fmt("%.4f", fit.slope);
  }
  const double elapsed = seconds_since(start);
  ck.require(elapsed <= 600.0, "runtime " + fmt("%.0f s", elapsed));
  ck.note("N=128, 13 samples, lambda 1..1/4: " + slopes + ", " + fmt("%.0f s", elapsed));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C5: dilation exponent s - n/p of the Besov norm on band-interior fields.

Outcome norm_homogeneity() {
  const auto start = Clock::now();
  const GridSpec g = grid3(32);
  const LittlewoodPaley lp(g);
  Checks ck;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rng = SplitMix64::stream(seed, "acceptance-homogeneity");
    RandomFieldSpec spec;
    spec.min_radius = 2.0;
    spec.max_radius = 10.0;
    spec.max_index = 10;
    const SpectralField u = random_field(g, spec, rng);
    std::vector<SpectralField> dilated{u, dilate_box(u, 1), dilate_box(u, 2)};
    std::deque<LittlewoodPaley> lps;
    for (const auto& d : dilated) lps.emplace_back(d.grid());
    for (double s : {-0.5, 0.0, 0.5, 1.5}) {
      for (Lebesgue p : {Lebesgue(1.0), Lebesgue(2.0), Lebesgue::infinity()}) {
        // u(x / 2^m) has norm 2^{-m (s - n/p)} |u|; the exponent is the slope in -m.
        std::vector<double> xs, ys;
        for (std::size_t m = 0; m < dilated.size(); ++m) {
          xs.push_back(-static_cast<double>(m));
          ys.push_back(std::log2(besov_norm(lps[m], dilated[m], {s, p, 2.0})));
        }
        const double xm = -1.0, ym = (ys[0] + ys[1] + ys[2]) / 3.0;
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t m = 0; m < xs.size(); ++m) {
          sxy += (xs[m] - xm) * (ys[m] - ym);
          sxx += (xs[m] - xm) * (xs[m] - xm);
        }
        const double measured = sxy / sxx;
        const double expected = s - 3.0 * p.inverse();
        worst = std::max(worst, std::abs(measured - expected));
        ck.require(std::abs(measured - expected) <= 0.05,
                   "s=" + fmt("%g", s) + " p=" + p.str() + " exponent " + fmt("%.4f", measured));
      }
    }
  }
  ck.note("12 (s,p) pairs x 10 fields: max |measured - (s - n/p)| " + fmt("%.2e", worst) + ", " +
          fmt("%.1f s", seconds_since(start)));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C6: solver validation.

Outcome solver_validation() {
  const auto start = Clock::now();
  Checks ck;
  const GridSpec g = grid3(32);
  const NavierStokesSolver solver(g, 1e-3);
  const SpectralField u0 = taylor_green(g);
  SolverState s{0.0, u0};
  double e = energy(s.u);
  int increases = 0;
  for (int k = 0; k < 1000; ++k) {
    s = solver.step(s);
    const double en = energy(s.u);
    if (en > e) ++increases;
    e = en;
  }
  // Closed form: sin x cos y, -cos x sin y decays as e^{-2t} on the 2 pi box.
  const double err = spectral_l2(s.u - std::exp(-2.0 * s.t) * u0);
  ck.require(std::abs(s.t - 1.0) <= 1e-12, "final time " + fmt("%.15g", s.t));
  ck.require(err <= 1e-6, "Taylor-Green L2 error " + fmt("%.2e", err));

  // Energy monotonicity on a genuinely nonlinear run.
  const GridSpec g16 = grid3(16);
  auto rng = SplitMix64::stream(11, "acceptance-solver");
  RandomFieldSpec spec;
  spec.components = 3;
  spec.max_index = 5;
  spec.solenoidal = true;
  spec.l2_target = 3.0;
  const SpectralField v0 = random_field(g16, spec, rng);
  const NavierStokesSolver s16(g16, 2e-3);
  SolverState r{0.0, v0};
  double er = energy(r.u);
  for (int k = 0; k < 200; ++k) {
    r = s16.step(r);
    const double en = energy(r.u);
    if (en > er) ++increases;
    er = en;
  }
  ck.require(increases == 0, std::to_string(increases) + " energy increases");

  // Vorticity residual order in dt.
  const SolverState a{0.0, v0};
  const double r1 = vorticity_equation_residual(a, step(a, 0.01));
  const double r2 = vorticity_equation_residual(a, step(a, 0.005));
  const double r3 = vorticity_equation_residual(a, step(a, 0.0025));
  const double rate1 = std::log2(r1 / r2), rate2 = std::log2(r2 / r3);
  ck.require(std::abs(rate1 - 2.0) <= 0.4 && std::abs(rate2 - 2.0) <= 0.4,
             "residual order " + fmt("%.3f", rate1) + ", " + fmt("%.3f", rate2));
  const double elapsed = seconds_since(start);
  ck.require(elapsed <= 120.0, "runtime " + fmt("%.0f s", elapsed));
  ck.note("Taylor-Green error " + fmt("%.2e", err) + ", energy increases " + std::to_string(increases) +
          ", residual orders " + fmt("%.3f", rate1) + ", " + fmt("%.3f", rate2) + ", " + fmt("%.0f s", elapsed));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C7: ODE lower bound.

Outcome ode_lemma() {
  Checks ck;
  double worst_eq = 0.0, worst_euler = 0.0;
  for (double gamma : {0.25, 0.5, 1.0, 2.0, 3.0}) {
    for (double c : {0.5, 1.0, 2.0}) {
      // Equality solution from X(0) = x0: X(t) = (x0^{-gamma} - gamma c t)^{-1/gamma}, T = x0^{-gamma} / (gamma c).
      const double x0 = 1.3;
      const double T = std::pow(x0, -gamma) / (gamma * c);
      std::vector<double> t, x;
      for (int k = 0; k < 100; ++k) {
        const double tk = T * (1.0 - std::pow(10.0, -4.0 * k / 99.0));
        t.push_back(tk);
        x.push_back(std::pow(std::pow(x0, -gamma) - gamma * c * tk, -1.0 / gamma));
        worst_eq = std::max(worst_eq, std::abs(x.back() / ode_lower_bound(gamma, c, T, tk) - 1.0));
      }
      const auto rep = verify_ode_lemma(t, x, gamma, c, T, 1e-9);
      ck.require(rep.verdict == OdeVerdict::pass, "equality solution verdict " + to_string(rep.verdict));

      // Forward Euler super-solutions.
      const double dt = 1e-3 * std::pow(x0, -gamma) / c;
      std::vector<double> te{0.0}, xe{x0};
      while (xe.back() < 1e100) {
        xe.push_back(xe.back() + dt * c * std::pow(xe.back(), 1.0 + gamma));
        te.push_back(te.back() + dt);
      }
      const double Te = te.back();
      te.pop_back();
      xe.pop_back();
      const double tol = 50.0 * dt / (Te - te.front());
      const auto er = verify_ode_lemma(te, xe, gamma, c, Te, tol);
      ck.require(er.verdict == OdeVerdict::pass, "Euler verdict " + to_string(er.verdict));
      for (std::size_t k = 0; k < te.size(); ++k)
        worst_euler = std::min(worst_euler, xe[k] / ode_lower_bound(gamma, c, Te, te[k]) - 1.0);
    }
  }
  ck.require(worst_eq <= 1e-9, "equality saturation " + fmt("%.2e", worst_eq));
  ck.require(worst_euler >= -1e-9, "Euler trajectory below bound " + fmt("%.2e", worst_euler));
  ck.note("equality max relative gap " + fmt("%.2e", worst_eq) + " over 100 times, Euler min slack " +
          fmt("%.2e", worst_euler));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C8: Besov B_{2,2} against Sobolev on the full corpus.

Outcome sobolev_equivalence() {
  const auto start = Clock::now();
  const LittlewoodPaley lp(kCorpusGrid);
  const auto modes = mode_table(kCorpusGrid);
  Checks ck;
  std::string notes;
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    // Envelope by direct shell enumeration: the ratio is a weighted mean of
    // sum_j 2^{2js} phi_j(|k|)^2 / |k|^{2s} over occupied shells.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::set<std::int32_t> shells;
    for (std::size_t idx = 1; idx < modes->size(); ++idx) shells.insert(modes->m2(idx));
    for (std::int32_t m2 : shells) {
      const double k = std::sqrt(static_cast<double>(m2)) * kCorpusGrid.k_unit();
      double w = 0.0;
      for (int j = lp.bands().j_min; j <= lp.bands().j_max; ++j) {
        const double phi = lp.profile().phi(std::ldexp(k, -j));
        w += std::exp2(2.0 * j * s) * phi * phi;
      }
      const double ratio = std::sqrt(w / std::pow(k, 2.0 * s));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const auto [elo, ehi] = sobolev_envelope(lp, s);
    ck.require(std::abs(elo - lo) <= 1e-12 * lo && std::abs(ehi - hi) <= 1e-12 * hi,
               "envelope mismatch at s=" + fmt("%g", s));
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (int i = 0; i < kCorpusSize; ++i) {
      const SpectralField u = corpus_member(i);
      const double ratio = besov_norm(lp, u, {s, 2.0, 2.0}) / sobolev_norm(u, s);
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    }
    ck.require(rmin >= lo * (1.0 - 1e-12) && rmax <= hi * (1.0 + 1e-12),
               "s=" + fmt("%g", s) + " ratio outside envelope");
    notes += (notes.empty() ? "" : ", ") + ("s=" + fmt("%g", s) + " [" + fmt("%.4f", rmin) + "," + fmt("%.4f", rmax) +
                                            "] in [" + fmt("%.4f", lo) + "," + fmt("%.4f", hi) + "]");
  }
  ck.note(notes + ", " + fmt("%.0f s", seconds_since(start)));
  return ck.outcome();
}

// ---------------------------------------------------------------------------------------------
// C9: implied-constant monitors, recorded for two seeds; never fails.

std::map<std::string, double> monitor_maxima(std::uint64_t seed) {
  const GridSpec g = grid3(32);
  const LittlewoodPaley lp(g);
  std::map<std::string, double> worst;
  auto record = [&](const std::string& id, std::optional<double> r) {
    if (!r || !std::isfinite(*r)) return;
    const auto [it, fresh] = worst.emplace(id, *r);
    if (!fresh) it->second = std::max(it->second, *r);
  };
  for (int i = 0; i < 6; ++i) {
    const auto s = seed * 1000 + static_cast<std::uint64_t>(i);
    const SpectralField u = safe_field(g, s, "c9-u");
    const SpectralField v = safe_field(g, s, "c9-v");
    const SpectralField w = safe_field(g, s, "c9-w", 3, false);
    for (int j = 0; j <= 3; ++j) {
      const auto b = verify_bernstein(lp, j, u, 2.0, Lebesgue::infinity(), 1.0);
      record("bernstein-derivative", b.derivative_ratio);
      record("bernstein-inverse", b.inverse_ratio);
      record("bernstein-low", b.low_over_full);
    }
    record("embedding-2-4", verify_embedding(lp, u, 2.0, 4.0, 2.0, 2.0, 0.0));
    record("embedding-2-inf", verify_embedding(lp, u, 2.0, Lebesgue::infinity(), 1.0, 1.0, 0.0));
    SplitExponents e1;
    e1.s1 = -0.5;
    e1.s2 = 1.0;
    SplitExponents e2;
    e2.s1 = 0.5;
    e2.s2 = 0.5;
    for (const auto& e : {e1, e2}) {
      for (const auto& r : monitor_paraproduct_estimates(lp, u, v, e)) record(r.id, r.ratio);
      for (const auto& r : monitor_remainder_estimates(lp, u, v, e)) record(r.id, r.ratio);
    }
    SplitExponents c1;
    c1.s1 = -1.0;
    c1.s2 = 1.5;
    SplitExponents c2;
    c2.s1 = -0.5;
    c2.s2 = 0.5;
    for (const auto& e : {c1, c2})
      for (const auto& r : monitor_commutator_estimates(lp, w, u, e)) record(r.id, r.ratio);
    for (int j = 0; j <= 2; ++j) record("kernel-bound", verify_commutator_kernel_bound(lp, u, v, j, 4.0, 4.0));
  }
  const GridSpec g16 = grid3(16);
  const LittlewoodPaley lp16(g16);
  auto rng = SplitMix64::stream(seed, "c9-budget");
  RandomFieldSpec spec;
  spec.components = 3;
  spec.max_index = 4;
  spec.solenoidal = true;
  spec.l2_target = 2.0;
  SolverState a{0.0, random_field(g16, spec, rng)};
  const NavierStokesSolver solver(g16, 2e-3);
  for (int k = 0; k < 5; ++k) {
    const SolverState b = solver.step(a);
    const auto budget = energy_budget(lp16, a, b, 2.0, 1.5);
    record("energy-budget-bound", budget.bound_ratio);
    a = b;
  }
  return worst;
}

Outcome implied_constants() {
  const auto m1 = monitor_maxima(1), m2 = monitor_maxima(2);
  std::ofstream os("acceptance_constants.csv");
  os << "estimate_id,max_ratio_seed1,max_ratio_seed2,spread\n";
  int stable = 0, total = 0;
  for (const auto& [id, r1] : m1) {
    const auto it = m2.find(id);
    if (it == m2.end()) continue;
    const double r2 = it->second;
    // A spread is only meaningful for positive ratios; the budget ratio can be negative.
    if (std::min(r1, r2) <= 0.0) {
      os << id << ',' << r1 << ',' << r2 << ",\n";
      continue;
    }
    const double spread = std::max(r1, r2) / std::min(r1, r2);
    os << id << ',' << r1 << ',' << r2 << ',' << spread << '\n';
    ++total;
    if (spread <= 3.0) ++stable;
  }
  Outcome o;
  o.detail = std::to_string(stable) + "/" + std::to_string(total) +
             " estimates stable within a factor 3 across two seeds (recorded in acceptance_constants.csv)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 exact identities", exact_identities},
      {"C2 constant-one inequalities", constant_one_inequalities},
      {"C3 exponent algebra", exponent_algebra},
      {"C4 blow-up rates of self-similar families", blowup_rates},
      {"C5 norm homogeneity", norm_homogeneity},
      {"C6 solver validation", solver_validation},
      {"C7 ODE lower bound", ode_lemma},
      {"C8 Besov-Sobolev equivalence", sobolev_equivalence},
      {"C9 implied-constant monitors (recorded only)", implied_constants},
  };
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) only.insert(argv[i]);
  bool all = true;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(name.substr(0, name.find(' ')))) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
