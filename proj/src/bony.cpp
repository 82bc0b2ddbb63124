#include "lpb/bony.hpp"

#include <cmath>

#include "lpb/spectral.hpp"

namespace lpb {

SpectralField pointwise_product(const SpectralField& u, const SpectralField& v) {
  u.require_same_grid(v, "pointwise_product");
  if (u.components() != 1 || v.components() != 1)
    throw std::invalid_argument("pointwise_product: scalar fields expected");
  ProductAccumulator acc(u.grid());
  acc.add(inverse_transform(u), inverse_transform(v));
  return acc.finish();
}

ProductAccumulator::ProductAccumulator(const GridSpec& grid) : grid_(grid), acc_(grid, 1) {}

void ProductAccumulator::add(const GridFunction& a, const GridFunction& b, double scale) {
  if (BandPieces::is_zero(a) || BandPieces::is_zero(b)) return;
  if (!(a.grid == grid_) || !(b.grid == grid_)) throw std::invalid_argument("ProductAccumulator: grid mismatch");
  auto out = acc_.component(0);
  auto x = a.component(0);
  auto y = b.component(0);
  if (scale == 1.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[i] * y[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * x[i] * y[i];
  }
}

SpectralField ProductAccumulator::finish() const {
  SpectralField out = forward_transform(acc_);
  dealias_inplace(out);
  return out;
}

namespace {

void require_scalar_pair(const BandPieces& a, const BandPieces& b, const char* what) {
  if (a.components != 1 || b.components != 1) throw std::invalid_argument(std::string(what) + ": scalar fields expected");
  if (!(a.grid == b.grid) || a.j_min != b.j_min || a.count() != b.count())
    throw std::invalid_argument(std::string(what) + ": band pieces from different grids");
}

}  // namespace

SpectralField paraproduct(const BandPieces& low_u, const BandPieces& band_v) {
  require_scalar_pair(low_u, band_v, "paraproduct");
  if (low_u.low.size() != low_u.delta.size()) throw std::invalid_argument("paraproduct: low pieces missing");
  ProductAccumulator acc(low_u.grid);
  for (int i = 0; i < low_u.count(); ++i) acc.add(low_u.low[i], band_v.delta[i]);
  return acc.finish();
}

SpectralField paraproduct(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v) {
  u.require_same_grid(v, "paraproduct");
  return paraproduct(band_pieces(lp, u, true), band_pieces(lp, v, false));
}

SpectralField remainder(const BandPieces& band_u, const BandPieces& band_v) {
  require_scalar_pair(band_u, band_v, "remainder");
  ProductAccumulator acc(band_u.grid);
  const int count = band_u.count();
  for (int i = 0; i < count; ++i) {
    for (int nu = -1; nu <= 1; ++nu) {
      const int k = i - nu;
      if (k < 0 || k >= count) continue;
      acc.add(band_u.delta[i], band_v.delta[k]);
    }
  }
  return acc.finish();
}

SpectralField remainder(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v) {
  u.require_same_grid(v, "remainder");
  return remainder(band_pieces(lp, u, false), band_pieces(lp, v, false));
}

double BonyPieces::identity_defect() const {
  SpectralField sum = Tuv + Tvu + Ruv;
  return relative_l2_error(sum, product);
}

BonyPieces bony_decompose(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v) {
  u.require_same_grid(v, "bony_decompose");
  const auto pu = band_pieces(lp, u, true);
  const auto pv = band_pieces(lp, v, true);
  return BonyPieces{paraproduct(pu, pv), paraproduct(pv, pu), remainder(pu, pv), pointwise_product(u, v)};
}

void SplitExponents::validate() const {
  if (p1.inverse() + p2.inverse() > 1.0 + 1e-15)
    throw std::invalid_argument("exponent arithmetic: 1/p1 + 1/p2 must not exceed 1");
  if (q1.inverse() + q2.inverse() > 1.0 + 1e-15)
    throw std::invalid_argument("exponent arithmetic: 1/q1 + 1/q2 must not exceed 1");
}

Lebesgue SplitExponents::p() const { return Lebesgue::from_inverse(p1.inverse() + p2.inverse()); }
Lebesgue SplitExponents::q() const { return Lebesgue::from_inverse(q1.inverse() + q2.inverse()); }

namespace {

EstimateRatio make_ratio(std::string id, double lhs, double rhs) {
  EstimateRatio r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs > 0.0) {
    r.ratio = lhs / rhs;
  } else {
    r.skip_reason = "zero right-hand side";
  }
  return r;
}

EstimateRatio skipped(std::string id, std::string reason) {
  EstimateRatio r;
  r.id = std::move(id);
  r.skip_reason = std::move(reason);
  return r;
}

}  // namespace

std::vector<EstimateRatio> monitor_paraproduct_estimates(const LittlewoodPaley& lp, const SpectralField& u,
                                                         const SpectralField& v, const SplitExponents& e) {
  e.validate();
  const double s = e.s();
  const Lebesgue p = e.p();
  const Lebesgue q = e.q();
  const auto pu = band_pieces(lp, u, true);
  const auto pv = band_pieces(lp, v, false);
  const double lhs = band_profile(band_pieces(lp, paraproduct(pu, pv), false), p).weighted(s, q);

  std::vector<EstimateRatio> out;
  const double u_lp = lp_norm(u, e.p1);
  const double v_b = band_profile(pv, e.p2).weighted(s, q);
  out.push_back(make_ratio("paraproduct-lebesgue", lhs, u_lp * v_b));
  if (e.s1 < 0.0) {
    const double u_b = band_profile(pu, e.p1).weighted(e.s1, e.q1);
    const double v_b2 = band_profile(pv, e.p2).weighted(e.s2, e.q2);
    out.push_back(make_ratio("paraproduct-besov", lhs, u_b * v_b2 / (-e.s1)));
  } else {
    out.push_back(skipped("paraproduct-besov", "requires s1 < 0"));
  }
  return out;
}

std::vector<EstimateRatio> monitor_remainder_estimates(const LittlewoodPaley& lp, const SpectralField& u,
                                                       const SpectralField& v, const SplitExponents& e) {
  e.validate();
  const double s = e.s();
  const Lebesgue p = e.p();
  const Lebesgue q = e.q();
  const auto pu = band_pieces(lp, u, false);
  const auto pv = band_pieces(lp, v, false);
  const auto r_prof = band_profile(band_pieces(lp, remainder(pu, pv), false), p);
  const double norms = band_profile(pu, e.p1).weighted(e.s1, e.q1) * band_profile(pv, e.p2).weighted(e.s2, e.q2);

  std::vector<EstimateRatio> out;
  if (s > 0.0) {
    out.push_back(make_ratio("remainder-positive", r_prof.weighted(s, q), norms / s));
  } else {
    out.push_back(skipped("remainder-positive", "requires s > 0"));
  }
  if (q.value() == 1.0 && s >= 0.0) {
    out.push_back(make_ratio("remainder-endpoint", r_prof.weighted(s, Lebesgue::infinity()), norms));
  } else {
    out.push_back(skipped("remainder-endpoint", "requires 1/q1 + 1/q2 = 1 and s >= 0"));
  }
  return out;
}

}  // namespace lpb
