#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lpb/bony.hpp"

namespace lpb {

/// R_j = [v.grad, Delta_j] f and its six Bony pieces.
///
/// R1 = [T_{v_k}, Delta_j] d_k f       R4 = R(v_k, d_k Delta_j f)
/// R2 = T_{d_k Delta_j f} v_k          R5 = -d_k Delta_j R(v_k, f)
/// R3 = -Delta_j T_{d_k f} v_k         R6 = Delta_j R(div v, f)
///
/// A multi-component f (e.g. a vorticity tensor) is handled component by component.
struct CommutatorPieces {
  int j = 0;
  SpectralField R;
  std::array<SpectralField, 6> parts;
  /// |v.grad f|_2, the size of the terms whose difference forms R.
  double product_norm = 0.0;

  SpectralField sum() const;
  /// |R - sum R^i|_2 / max(|R|_2, |v.grad f|_2) (absolute when both vanish).
  double identity_defect() const;
};

/// Band-independent products shared by every j for one (v, f) pair.
class CommutatorSetup {
 public:
  /// v: vector field, f: field with any number of components. decompose() needs both zero-mean,
  /// since the constant mode lies in no band.
  CommutatorSetup(const LittlewoodPaley& lp, const SpectralField& v, const SpectralField& f);

  const LittlewoodPaley& lp() const { return lp_; }
  SpectralField commutator(int j) const;
  CommutatorPieces decompose(int j) const;

 private:
  struct ComponentTerms {
    SpectralField product;    // sum_k P(v_k, d_k f)
    SpectralField low_v;      // sum_k T_{v_k} d_k f
    SpectralField low_grad;   // sum_k T_{d_k f} v_k
    std::vector<SpectralField> remainders;  // R(v_k, f) per k
    SpectralField div_remainder;            // R(div v, f)
  };

  CommutatorPieces build(int j, bool pieces) const;

  const LittlewoodPaley& lp_;
  SpectralField v_;
  SpectralField f_;
  std::vector<BandPieces> v_pieces_;
  std::vector<GridFunction> v_phys_;
  std::vector<ComponentTerms> terms_;
  bool zero_mean_ = true;
};

SpectralField commutator(const LittlewoodPaley& lp, int j, const SpectralField& v, const SpectralField& f);
CommutatorPieces decompose_commutator(const LittlewoodPaley& lp, int j, const SpectralField& v,
                                      const SpectralField& f);

/// Ratios of | j -> 2^{js} |R^i_j|_{L^p} |_{l^q} to the bounds
///   R1a: |grad v|_{L^{p1}} |f|_{B^s_{p2,q}}
///   R1b (s1 < 0), R2 (s1 > -1), R3 (s2 < 1), R4, R5 (s > -1), R6 (s > 0):
///        |grad v|_{B^{s1}_{p1,q1}} |f|_{B^{s2}_{p2,q2}}
/// Inapplicable estimates are returned with a skip reason.
std::vector<EstimateRatio> monitor_commutator_estimates(const LittlewoodPaley& lp, const SpectralField& v,
                                                        const SpectralField& f, const SplitExponents& e);

/// |[Delta_j, a] b|_{L^{pq/(p+q)}} / (2^{-j} |grad a|_{L^p} |b|_{L^q}) for scalar a, b;
/// nullopt when the denominator vanishes.
std::optional<double> verify_commutator_kernel_bound(const LittlewoodPaley& lp, const SpectralField& a,
                                                     const SpectralField& b, int j, Lebesgue p, Lebesgue q);

}  // namespace lpb
