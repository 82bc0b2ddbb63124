#include "lpb/commutator.hpp"

#include <algorithm>
#include <cmath>

#include "lpb/spectral.hpp"

namespace lpb {

SpectralField CommutatorPieces::sum() const {
  SpectralField out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += parts[i];
  return out;
}

double CommutatorPieces::identity_defect() const {
  const SpectralField diff = R - sum();
  const double scale = std::max(spectral_l2(R), product_norm);
  return scale > 0.0 ? spectral_l2(diff) / scale : spectral_l2(diff);
}

namespace {

void accumulate_paraproduct(ProductAccumulator& acc, const BandPieces& low, const BandPieces& band) {
  for (int i = 0; i < low.count(); ++i) acc.add(low.low[i], band.delta[i]);
}

void accumulate_remainder(ProductAccumulator& acc, const BandPieces& a, const BandPieces& b) {
  const int count = a.count();
  for (int i = 0; i < count; ++i) {
    for (int k = std::max(0, i - 1); k <= std::min(count - 1, i + 1); ++k) acc.add(a.delta[i], b.delta[k]);
  }
}

}  // namespace

CommutatorSetup::CommutatorSetup(const LittlewoodPaley& lp, const SpectralField& v, const SpectralField& f)
    : lp_(lp), v_(v), f_(f) {
  const GridSpec& grid = lp.grid();
  const int n = grid.n;
  if (!(v.grid() == grid) || !(f.grid() == grid)) throw std::invalid_argument("commutator: grid mismatch");
  if (v.components() != n) throw std::invalid_argument("commutator: v must be a vector field");
  zero_mean_ = v.zero_mean() && f.zero_mean();

  for (int k = 0; k < n; ++k) {
    const SpectralField vk = v.extract(k);
    v_pieces_.push_back(band_pieces(lp, vk, true));
    v_phys_.push_back(inverse_transform(vk));
  }
  const auto div_pieces = band_pieces(lp, divergence(v), false);

  for (int c = 0; c < f.components(); ++c) {
    const SpectralField fc = f.extract(c);
    const auto f_pieces = band_pieces(lp, fc, false);
    ProductAccumulator product(grid), low_v(grid), low_grad(grid), div_rem(grid);
    ComponentTerms terms;
    for (int k = 0; k < n; ++k) {
      const SpectralField dk = derivative(fc, k);
      const auto dk_pieces = band_pieces(lp, dk, true);
      product.add(v_phys_[k], inverse_transform(dk));
      accumulate_paraproduct(low_v, v_pieces_[k], dk_pieces);
      accumulate_paraproduct(low_grad, dk_pieces, v_pieces_[k]);
      terms.remainders.push_back(remainder(v_pieces_[k], f_pieces));
    }
    accumulate_remainder(div_rem, div_pieces, f_pieces);
    terms.product = product.finish();
    terms.low_v = low_v.finish();
    terms.low_grad = low_grad.finish();
    terms.div_remainder = div_rem.finish();
    terms_.push_back(std::move(terms));
  }
}

CommutatorPieces CommutatorSetup::build(int j, bool pieces) const {
  const GridSpec& grid = lp_.grid();
  const int n = grid.n;
  const int comps = f_.components();
  CommutatorPieces out;
  out.j = j;
  out.R = SpectralField(grid, comps);
  for (auto& p : out.parts) p = SpectralField(grid, comps);
  double product_sq = 0.0;

  for (int c = 0; c < comps; ++c) {
    const SpectralField band = lp_.delta(j, f_.extract(c));
    const ComponentTerms& terms = terms_[static_cast<std::size_t>(c)];
    ProductAccumulator advect(grid), r1(grid), r2(grid), r4(grid);
    for (int k = 0; k < n; ++k) {
      const SpectralField g = derivative(band, k);
      if (!pieces) {
        advect.add(v_phys_[k], inverse_transform(g));
        continue;
      }
      const auto g_pieces = band_pieces(lp_, g, true);
      advect.add(v_phys_[k], inverse_transform(g));
      accumulate_paraproduct(r1, v_pieces_[k], g_pieces);
      accumulate_paraproduct(r2, g_pieces, v_pieces_[k]);
      accumulate_remainder(r4, v_pieces_[k], g_pieces);
    }
    out.R.assign(c, advect.finish() - lp_.delta(j, terms.product));
    product_sq += spectral_l2(terms.product) * spectral_l2(terms.product);
    if (!pieces) continue;

    out.parts[0].assign(c, r1.finish() - lp_.delta(j, terms.low_v));
    out.parts[1].assign(c, r2.finish());
    out.parts[2].assign(c, -1.0 * lp_.delta(j, terms.low_grad));
    out.parts[3].assign(c, r4.finish());
    SpectralField r5(grid, 1);
    for (int k = 0; k < n; ++k) r5 -= derivative(lp_.delta(j, terms.remainders[static_cast<std::size_t>(k)]), k);
    out.parts[4].assign(c, r5);
    out.parts[5].assign(c, lp_.delta(j, terms.div_remainder));
  }
  out.product_norm = std::sqrt(product_sq);
  return out;
}

SpectralField CommutatorSetup::commutator(int j) const { return build(j, false).R; }
CommutatorPieces CommutatorSetup::decompose(int j) const {
  if (!zero_mean_) throw std::invalid_argument("decompose_commutator: zero mode must vanish");
  return build(j, true);
}

SpectralField commutator(const LittlewoodPaley& lp, int j, const SpectralField& v, const SpectralField& f) {
  return CommutatorSetup(lp, v, f).commutator(j);
}

CommutatorPieces decompose_commutator(const LittlewoodPaley& lp, int j, const SpectralField& v,
                                      const SpectralField& f) {
  return CommutatorSetup(lp, v, f).decompose(j);
}

std::vector<EstimateRatio> monitor_commutator_estimates(const LittlewoodPaley& lp, const SpectralField& v,
                                                        const SpectralField& f, const SplitExponents& e) {
  e.validate();
  const double s = e.s();
  const Lebesgue p = e.p();
  const Lebesgue q = e.q();
  const BandRange& bands = lp.bands();

  const CommutatorSetup setup(lp, v, f);
  std::array<std::vector<double>, 6> piece_norms;
  for (int j = bands.j_min; j <= bands.j_max; ++j) {
    const CommutatorPieces cp = setup.decompose(j);
    for (std::size_t i = 0; i < 6; ++i) piece_norms[i].push_back(lp_norm(cp.parts[i], p));
  }
  auto lhs = [&](std::size_t i) {
    BandProfile prof{bands.j_min, piece_norms[i]};
    return prof.weighted(s, q);
  };

  const SpectralField grad_v = jacobian(v);
  const auto f_pieces = band_pieces(lp, f, false);
  const double besov_product = band_profile(band_pieces(lp, grad_v, false), e.p1).weighted(e.s1, e.q1) *
                               band_profile(f_pieces, e.p2).weighted(e.s2, e.q2);
  const double lebesgue_product = lp_norm(grad_v, e.p1) * band_profile(f_pieces, e.p2).weighted(s, q);

  auto ratio = [](std::string id, double l, double r) {
    EstimateRatio out;
    out.id = std::move(id);
    out.lhs = l;
    out.rhs = r;
    if (r > 0.0) {
      out.ratio = l / r;
    } else {
      out.skip_reason = "zero right-hand side";
    }
    return out;
  };
  auto gated = [&](std::string id, std::size_t i, bool ok, const char* reason) {
    if (ok) return ratio(std::move(id), lhs(i), besov_product);
    EstimateRatio out;
    out.id = std::move(id);
    out.skip_reason = reason;
    return out;
  };

  std::vector<EstimateRatio> out;
  out.push_back(ratio("R1a", lhs(0), lebesgue_product));
  out.push_back(gated("R1b", 0, e.s1 < 0.0, "requires s1 < 0"));
  out.push_back(gated("R2", 1, e.s1 > -1.0, "requires s1 > -1"));
  out.push_back(gated("R3", 2, e.s2 < 1.0, "requires s2 < 1"));
  out.push_back(gated("R4", 3, true, ""));
  out.push_back(gated("R5", 4, s > -1.0, "requires s > -1"));
  out.push_back(gated("R6", 5, s > 0.0, "requires s > 0"));
  return out;
}

std::optional<double> verify_commutator_kernel_bound(const LittlewoodPaley& lp, const SpectralField& a,
                                                     const SpectralField& b, int j, Lebesgue p, Lebesgue q) {
  a.require_same_grid(b, "verify_commutator_kernel_bound");
  if (a.components() != 1 || b.components() != 1)
    throw std::invalid_argument("verify_commutator_kernel_bound: scalar fields expected");
  const Lebesgue target = Lebesgue::from_inverse(p.inverse() + q.inverse());
  const double den = std::ldexp(lp_norm(gradient(a), p) * lp_norm(b, q), -j);
  if (den == 0.0) return std::nullopt;
  const SpectralField comm = lp.delta(j, pointwise_product(a, b)) - pointwise_product(a, lp.delta(j, b));
  return lp_norm(comm, target) / den;
}

}  // namespace lpb
