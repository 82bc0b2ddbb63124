#pragma once

#include <optional>
#include <string>

#include "lpb/besov.hpp"

namespace lpb {

/// Physical product of two scalar fields followed by 2/3-rule truncation.
SpectralField pointwise_product(const SpectralField& u, const SpectralField& v);

/// Accumulates physical-space products and converts once: the dealiased
/// transform is linear, so sum_i P(a_i, b_i) equals P applied to the summed products.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(const GridSpec& grid);

  /// acc += scale * a * b (scalar grid functions; empty means zero).
  void add(const GridFunction& a, const GridFunction& b, double scale = 1.0);
  /// Forward transform plus 2/3-rule truncation.
  SpectralField finish() const;

 private:
  GridSpec grid_;
  GridFunction acc_;
};

/// T_u v = sum_j S_{j-1}u Delta_j v. `low_u` needs its low pieces.
SpectralField paraproduct(const BandPieces& low_u, const BandPieces& band_v);
SpectralField paraproduct(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v);

/// R(u,v) = sum_j sum_{|nu|<=1} Delta_j u Delta_{j-nu} v.
SpectralField remainder(const BandPieces& band_u, const BandPieces& band_v);
SpectralField remainder(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v);

struct BonyPieces {
  SpectralField Tuv;
  SpectralField Tvu;
  SpectralField Ruv;
  SpectralField product;

  /// |Tuv + Tvu + Ruv - uv|_2 / |uv|_2.
  double identity_defect() const;
};

BonyPieces bony_decompose(const LittlewoodPaley& lp, const SpectralField& u, const SpectralField& v);

/// Split exponents (s1, p1, q1) + (s2, p2, q2) -> (s, p, q) with s = s1 + s2 and
/// reciprocal p, q adding. Throws std::invalid_argument if 1/p1 + 1/p2 > 1 or 1/q1 + 1/q2 > 1.
struct SplitExponents {
  double s1 = 0.0, s2 = 0.0;
  Lebesgue p1 = 2.0, p2 = 2.0;
  Lebesgue q1 = 2.0, q2 = 2.0;

  void validate() const;
  double s() const { return s1 + s2; }
  Lebesgue p() const;
  Lebesgue q() const;
};

/// One monitored inequality: lhs / rhs, or a skip reason.
struct EstimateRatio {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;
  std::string skip_reason;
};

/// Paraproduct bounds: T_u v in B^s_{p,q} against |u|_{L^{p1}} |v|_{B^s_{p2,q}}, and,
/// for s1 < 0, against |u|_{B^{s1}_{p1,q1}} |v|_{B^{s2}_{p2,q2}} / (-s1).
std::vector<EstimateRatio> monitor_paraproduct_estimates(const LittlewoodPaley& lp, const SpectralField& u,
                                                         const SpectralField& v, const SplitExponents& e);

/// Remainder bounds: for s > 0 against |u|_{B^{s1}_{p1,q1}} |v|_{B^{s2}_{p2,q2}} / s, and, for
/// q = 1 and s >= 0, R(u,v) in B^s_{p,inf} against the same product.
std::vector<EstimateRatio> monitor_remainder_estimates(const LittlewoodPaley& lp, const SpectralField& u,
                                                       const SpectralField& v, const SplitExponents& e);

}  // namespace lpb
