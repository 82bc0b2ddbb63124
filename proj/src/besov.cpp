#include "lpb/besov.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lpb/spectral.hpp"

namespace lpb {

double sequence_lq(std::span<const double> a, Lebesgue q) {
  double peak = 0.0;
  for (double v : a) peak = std::max(peak, std::abs(v));
  if (q.is_infinite() || peak == 0.0) return peak;
  const double qv = q.value();
  double sum = 0.0;
  for (double v : a) sum += std::pow(std::abs(v) / peak, qv);
  return peak * std::pow(sum, 1.0 / qv);
}

double BandProfile::weighted(double s, Lebesgue q) const {
  std::vector<double> w(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i)
    w[i] = std::exp2(s * (j_min + static_cast<int>(i))) * norms[i];
  return sequence_lq(w, q);
}

BandProfile band_profile(const BandPieces& pieces, Lebesgue p) {
  BandProfile prof;
  prof.j_min = pieces.j_min;
  prof.norms.reserve(pieces.delta.size());
  for (const auto& g : pieces.delta) prof.norms.push_back(BandPieces::is_zero(g) ? 0.0 : lp_norm(g, p));
  return prof;
}

BandProfile band_profile(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p) {
  if (!u.zero_mean()) throw std::invalid_argument("besov: zero mode must vanish");
  return band_profile(band_pieces(lp, u, false), p);
}

double besov_norm(const LittlewoodPaley& lp, const SpectralField& u, const BesovParams& params) {
  return band_profile(lp, u, params.p).weighted(params.s, params.q);
}

double sobolev_norm(const SpectralField& u, double s) {
  if (!u.zero_mean()) throw std::invalid_argument("sobolev_norm: zero mode must vanish");
  const auto modes = mode_table(u.grid());
  const double k02 = u.grid().k_unit() * u.grid().k_unit();
  double sum = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    auto d = u.component(c);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      const auto m2 = modes->m2(idx);
      if (m2 == 0) continue;
      sum += std::pow(k02 * m2, s) * std::norm(d[idx]);
    }
  }
  return std::sqrt(sum * u.grid().volume());
}

std::pair<double, double> sobolev_envelope(const LittlewoodPaley& lp, double s) {
  const auto modes = mode_table(lp.grid());
  std::set<std::int32_t> shells;
  for (std::size_t idx = 0; idx < modes->size(); ++idx)
    if (modes->m2(idx) > 0) shells.insert(modes->m2(idx));
  const double k0 = lp.grid().k_unit();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto m2 : shells) {
    const double k = k0 * std::sqrt(static_cast<double>(m2));
    double sum = 0.0;
    for (int j = lp.bands().j_min; j <= lp.bands().j_max; ++j) {
      const double ph = lp.profile().phi(std::ldexp(k, -j));
      sum += std::exp2(2.0 * j * s) * ph * ph;
    }
    const double r = sum / std::pow(k, 2.0 * s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {std::sqrt(lo), std::sqrt(hi)};
}

SpectralField dilate_box(const SpectralField& u, int m) {
  GridSpec g = u.grid();
  g.L = std::ldexp(g.L, m);
  SpectralField out(g, u.components());
  std::copy(u.data().begin(), u.data().end(), out.data().begin());
  return out;
}

std::optional<double> verify_embedding(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p1, Lebesgue p2,
                                       Lebesgue q1, Lebesgue q2, double delta) {
  if (p1.value() > p2.value() || q1.value() > q2.value())
    throw std::invalid_argument("verify_embedding: requires p1 <= p2 and q1 <= q2");
  const int n = u.grid().n;
  const auto pieces = band_pieces(lp, u, false);
  const double den = band_profile(pieces, p1).weighted(n * p1.inverse() + delta, q1);
  if (den == 0.0) return std::nullopt;
  const double num = band_profile(pieces, p2).weighted(n * p2.inverse() + delta, q2);
  return num / den;
}

std::optional<LebesgueComparison> verify_lebesgue_comparison(const LittlewoodPaley& lp, const SpectralField& u,
                                                             Lebesgue p) {
  if (!u.zero_mean()) throw std::invalid_argument("verify_lebesgue_comparison: zero mode must vanish");
  const double lpn = lp_norm(u, p);
  if (lpn == 0.0) return std::nullopt;
  const auto prof = band_profile(lp, u, p);
  return LebesgueComparison{prof.weighted(0.0, Lebesgue::infinity()) / lpn, lpn / prof.weighted(0.0, 1.0)};
}

BesovParams interpolate(const BesovParams& a, const BesovParams& b, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("interpolation weight must lie in (0,1)");
  BesovParams mid;
  mid.s = lambda * a.s + (1.0 - lambda) * b.s;
  mid.p = Lebesgue::from_inverse(lambda * a.p.inverse() + (1.0 - lambda) * b.p.inverse());
  mid.q = Lebesgue::from_inverse(lambda * a.q.inverse() + (1.0 - lambda) * b.q.inverse());
  return mid;
}

HolderCheck interpolation_holder(const BandProfile& pa, const BandProfile& pb, const BandProfile& pmid,
                                 const BesovParams& a, const BesovParams& b, double lambda) {
  const BesovParams mid = interpolate(a, b, lambda);
  HolderCheck h;
  h.lhs = pmid.weighted(mid.s, mid.q);
  h.rhs = std::pow(pa.weighted(a.s, a.q), lambda) * std::pow(pb.weighted(b.s, b.q), 1.0 - lambda);
  return h;
}

HolderCheck verify_interpolation_holder(const LittlewoodPaley& lp, const SpectralField& u, const BesovParams& a,
                                        const BesovParams& b, double lambda) {
  if (!u.zero_mean()) throw std::invalid_argument("verify_interpolation_holder: zero mode must vanish");
  const BesovParams mid = interpolate(a, b, lambda);
  const auto pieces = band_pieces(lp, u, false);
  return interpolation_holder(band_profile(pieces, a.p), band_profile(pieces, b.p), band_profile(pieces, mid.p), a,
                              b, lambda);
}

std::optional<double> verify_interpolation_geometric(const LittlewoodPaley& lp, const SpectralField& u, Lebesgue p,
                                                     double s1, double s2, double lambda) {
  if (!(s1 < s2)) throw std::invalid_argument("verify_interpolation_geometric: requires s1 < s2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("interpolation weight must lie in (0,1)");
  const auto prof = band_profile(lp, u, p);
  const double low = prof.weighted(s1, Lebesgue::infinity());
  const double high = prof.weighted(s2, Lebesgue::infinity());
  const double den = std::pow(low, lambda) * std::pow(high, 1.0 - lambda);
  if (den == 0.0) return std::nullopt;
  const double lhs = prof.weighted(lambda * s1 + (1.0 - lambda) * s2, 1.0);
  return lhs * lambda * (1.0 - lambda) * (s2 - s1) / den;
}

std::optional<double> verify_convergence_bound(const LittlewoodPaley& lp, std::span<const SpectralField> pieces,
                                               int j_first, const Annulus& annulus, const BesovParams& params) {
  if (pieces.empty()) return std::nullopt;
  const GridSpec& grid = pieces.front().grid();
  const auto modes = mode_table(grid);
  const double k0 = grid.k_unit();
  SpectralField sum(grid, pieces.front().components());
  std::vector<double> weighted;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const int j = j_first + static_cast<int>(i);
    const auto& piece = pieces[i];
    const double lo = std::ldexp(annulus.inner, j);
    const double hi = std::ldexp(annulus.outer, j);
    const double peak = max_abs_coeff(piece);
    for (int c = 0; c < piece.components(); ++c) {
      auto d = piece.component(c);
      for (std::size_t idx = 0; idx < d.size(); ++idx) {
        const double k = k0 * std::sqrt(static_cast<double>(modes->m2(idx)));
        if ((k < lo || k > hi) && std::abs(d[idx]) > 1e-14 * peak)
          throw std::invalid_argument("verify_convergence_bound: piece " + std::to_string(j) +
                                      " has energy outside its annulus");
      }
    }
    sum += piece;
    weighted.push_back(std::exp2(params.s * j) * lp_norm(piece, params.p));
  }
  const double den = sequence_lq(weighted, params.q);
  if (den == 0.0) return std::nullopt;
  return besov_norm(lp, sum, params) / den;
}

}  // namespace lpb
