#include <cmath>

#include "lpb/besov.hpp"
#include "support.hpp"

using namespace lpb;
using lpb::testing::grid3;
using Catch::Approx;

namespace {

SpectralField cos_mode(const GridSpec& g, double m) {
  return forward_transform(sample(g, [=](const Wavevector& x) { return std::cos(m * g.k_unit() * x[0]); }));
}

SpectralField corpus_field(const GridSpec& g, std::uint64_t seed, int max_index, double slope = 0.0) {
  auto rng = SplitMix64::stream(seed, "besov-corpus");
  RandomFieldSpec spec;
  spec.max_index = max_index;
  spec.slope = slope;
  return random_field(g, spec, rng);
}

}  // namespace

TEST_CASE("sequence norms", "[besov]") {
  const std::vector<double> a{3.0, 4.0};
  CHECK(sequence_lq(a, 2.0) == Approx(5.0));
  CHECK(sequence_lq(a, 1.0) == Approx(7.0));
  CHECK(sequence_lq(a, Lebesgue::infinity()) == 4.0);
  CHECK(sequence_lq(std::vector<double>{}, 2.0) == 0.0);
}

TEST_CASE("Besov norm of a single cosine", "[besov]") {
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp(g);
  const auto u = cos_mode(g, 1.0);
  const double l2 = lp_norm(u, 2.0);
  const double phi1 = lp.profile().phi(1.0);
  const double phi2 = lp.profile().phi(2.0);
  CHECK(besov_norm(lp, u, {0.0, 2.0, 2.0}) == Approx(std::hypot(phi1, phi2) * l2).epsilon(1e-13));
  CHECK(besov_norm(lp, SpectralField(g, 1), {0.0, 2.0, 2.0}) == 0.0);
  SpectralField with_mean = u;
  with_mean.data()[0] = 0.3;
  CHECK_THROWS_AS(besov_norm(lp, with_mean, {0.0, 2.0, 2.0}), std::invalid_argument);

  const BesovParams bp{0.5, 4.0, 2.0};
  CHECK(bp.homogeneity(3) == Approx(0.25));
  CHECK(bp.critical_offset(3) == Approx(0.75));
}

TEST_CASE("Sobolev norm", "[besov]") {
  const GridSpec g = grid3(16);
  const auto u = corpus_field(g, 1, 5);
  CHECK(sobolev_norm(u, 0.0) == Approx(lp_norm(u, 2.0)).epsilon(1e-12));
  const auto c2 = cos_mode(g, 2.0);
  CHECK(sobolev_norm(c2, 1.0) == Approx(2.0 * lp_norm(c2, 2.0)).epsilon(1e-13));
}

TEST_CASE("Besov/Sobolev ratio inside the shell envelope", "[besov]") {
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp(g);
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    const auto [lo, hi] = sobolev_envelope(lp, s);
    CHECK(lo > 0.0);
    CHECK(hi >= lo);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto u = corpus_field(g, seed, 7, 1.0);
      const double ratio = besov_norm(lp, u, {s, 2.0, 2.0}) / sobolev_norm(u, s);
      CHECK(ratio >= lo * (1.0 - 1e-12));
      CHECK(ratio <= hi * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("dilation scales norms by 2^{m(s - n/p)}", "[besov]") {
  const GridSpec g = grid3(32);
  const LittlewoodPaley lp(g);
  const auto u = corpus_field(g, 3, 5);
  for (double s : {-0.5, 0.0, 0.5, 1.5}) {
    for (Lebesgue p : {Lebesgue(1.0), Lebesgue(2.0), Lebesgue::infinity()}) {
      const auto v = dilate_box(u, 1);
      const LittlewoodPaley lp2(v.grid());
      const double ratio = besov_norm(lp2, v, {s, p, 2.0}) / besov_norm(lp, u, {s, p, 2.0});
      CHECK(std::log2(ratio) == Approx(3.0 * p.inverse() - s).margin(1e-10));
    }
  }
}

TEST_CASE("embedding and Lebesgue comparison", "[besov]") {
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp(g);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = corpus_field(g, seed, 7);
    CHECK(*verify_embedding(lp, u, 2.0, 2.0, 2.0, 2.0, 0.1) == Approx(1.0));
    CHECK(*verify_embedding(lp, u, 2.0, 2.0, 1.0, Lebesgue::infinity(), 0.0) <= 1.0);
    CHECK(std::isfinite(*verify_embedding(lp, u, 2.0, Lebesgue::infinity(), 2.0, 2.0, 0.0)));
    for (Lebesgue p : {Lebesgue(1.0), Lebesgue(2.0), Lebesgue(4.0), Lebesgue::infinity()}) {
      const auto cmp = verify_lebesgue_comparison(lp, u, p);
      REQUIRE(cmp.has_value());
      CHECK(cmp->lower <= 1.0 + 1e-10);
      if (p.value() == 2.0) CHECK(cmp->upper <= 1.0 + 1e-12);
    }
    CHECK(band_profile(lp, u, 2.0).weighted(0.3, 4.0) <= band_profile(lp, u, 2.0).weighted(0.3, 2.0));
  }
  CHECK_FALSE(verify_lebesgue_comparison(lp, SpectralField(g, 1), 2.0).has_value());
  CHECK_THROWS_AS(verify_embedding(lp, corpus_field(g, 0, 4), 4.0, 2.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("interpolation inequalities", "[besov]") {
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp(g);
  const BesovParams a{0.0, 2.0, 2.0};
  const BesovParams b{1.0, 2.0, 2.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = corpus_field(g, seed, 7);
    const auto h = verify_interpolation_holder(lp, u, a, b, 0.5);
    CHECK(h.relative_slack() >= -1e-10);
    CHECK(verify_interpolation_holder(lp, u, a, a, 0.3).relative_slack() == Approx(0.0).margin(1e-14));
    const auto mixed = verify_interpolation_holder(lp, u, {-0.5, 4.0, 1.0}, {1.0, 1.5, Lebesgue::infinity()}, 0.3);
    CHECK(mixed.relative_slack() >= -1e-10);
    CHECK(std::isfinite(*verify_interpolation_geometric(lp, u, 2.0, -1.0, 1.0, 0.5)));
  }
  CHECK_THROWS_AS(interpolate(a, b, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(interpolate(a, b, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(verify_interpolation_geometric(lp, corpus_field(g, 0, 4), 2.0, 1.0, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_FALSE(verify_interpolation_geometric(lp, SpectralField(g, 1), 2.0, 0.0, 1.0, 0.5).has_value());

  // |k| = 6 has phi(6 / 2^j) = 1 at j = 2 and 0 elsewhere: a single-band field, so every
  // weighted norm collapses to one term and the geometric ratio is lambda(1-lambda)(s2-s1).
  const GridSpec g2 = grid3(32);
  const LittlewoodPaley lp2(g2);
  const auto six = cos_mode(g2, 6.0);
  CHECK(relative_l2_error(lp2.delta(2, six), six) <= 1e-14);
  const auto r = verify_interpolation_geometric(lp2, six, 2.0, 0.0, 1.0, 0.5);
  REQUIRE(r.has_value());
  CHECK(*r == Approx(0.25).epsilon(1e-13));
  CHECK(verify_interpolation_holder(lp2, six, a, b, 0.5).relative_slack() == Approx(0.0).margin(1e-13));
}

TEST_CASE("convergence bound on band-supported pieces", "[besov]") {
  const GridSpec g = grid3(16);
  const LittlewoodPaley lp(g);
  const auto u = corpus_field(g, 9, 7);
  std::vector<SpectralField> pieces;
  for (int j = lp.bands().j_min; j <= lp.bands().j_max; ++j) pieces.push_back(lp.delta(j, u));
  const auto r = verify_convergence_bound(lp, pieces, lp.bands().j_min, Annulus{}, {0.5, 2.0, 2.0});
  REQUIRE(r.has_value());
  CHECK(*r == Approx(1.0).epsilon(1e-12));

  std::vector<SpectralField> wrong{u};
  CHECK_THROWS_AS(verify_convergence_bound(lp, wrong, 0, Annulus{}, {0.0, 2.0, 2.0}), std::invalid_argument);
  std::vector<SpectralField> zeros(3, SpectralField(g, 1));
  CHECK_FALSE(verify_convergence_bound(lp, zeros, 0, Annulus{}, {0.0, 2.0, 2.0}).has_value());
}
