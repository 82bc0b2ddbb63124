#include <cmath>
#include <sstream>

#include "lpb/snapshot.hpp"
#include "support.hpp"

using namespace lpb;
using lpb::testing::grid3;
using Catch::Approx;

TEST_CASE("grid validation rejects bad shapes", "[grid]") {
  CHECK_THROWS_AS((GridSpec{3, 48, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{4, 16, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 16, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((GridSpec{2, 16, 1.0}.validate()));
  CHECK_THROWS_AS(SpectralField(GridSpec{3, 12, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("Lebesgue exponents", "[grid]") {
  CHECK_THROWS_AS(Lebesgue(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Lebesgue(std::nan("")), std::invalid_argument);
  CHECK(Lebesgue::infinity().inverse() == 0.0);
  CHECK(Lebesgue(2.0).conjugate().value() == Approx(2.0));
  CHECK(Lebesgue(1.0).conjugate().is_infinite());
  CHECK(Lebesgue::from_inverse(0.0).is_infinite());
  CHECK_THROWS_AS(Lebesgue::from_inverse(1.5), std::invalid_argument);
}

TEST_CASE("forward transform of simple signals", "[spectral]") {
  const GridSpec g = grid3(16);
  SpectralField one = forward_transform(sample(g, [](const Wavevector&) { return 1.0; }));
  CHECK(std::abs(one.data()[0] - cplx(1.0, 0.0)) < 1e-15);
  double rest = 0.0;
  for (std::size_t i = 1; i < one.data().size(); ++i) rest = std::max(rest, std::abs(one.data()[i]));
  CHECK(rest < 1e-15);

  SpectralField c = forward_transform(sample(g, [](const Wavevector& x) { return std::cos(x[0]); }));
  const std::size_t plus = 1 * 16 * 16;
  const std::size_t minus = 15 * 16 * 16;
  CHECK(std::abs(c.data()[plus] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(c.data()[minus] - cplx(0.5, 0.0)) < 1e-15);
}

TEST_CASE("transform round trip on random fields", "[spectral]") {
  for (int n : {2, 3}) {
    const GridSpec g{n, 32, 3.0};
    auto rng = SplitMix64::stream(7, "roundtrip", static_cast<std::uint64_t>(n));
    GridFunction f(g, 2);
    for (auto& v : f.values) v = rng.normal();
    const GridFunction back = inverse_transform(forward_transform(f));
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      err += (back.values[i] - f.values[i]) * (back.values[i] - f.values[i]);
      norm += f.values[i] * f.values[i];
    }
    CHECK(std::sqrt(err / norm) <= 1e-13);
  }
}

TEST_CASE("lp_norm examples", "[spectral]") {
  const GridSpec g = grid3(16);
  CHECK(lp_norm(SpectralField(g, 1), 2.0) == 0.0);
  const auto one = sample(g, [](const Wavevector&) { return 1.0; });
  CHECK(lp_norm(one, 2.0) == Approx(std::pow(2.0 * kPi, 1.5)).epsilon(1e-14));
  const auto s = sample(g, [](const Wavevector& x) { return std::sin(x[0]); });
  CHECK(lp_norm(s, 2.0) == Approx(std::pow(2.0 * kPi, 1.5) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lp_norm(s, Lebesgue::infinity()) == Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(forward_transform(s), 2.0) == Approx(spectral_l2(forward_transform(s))).epsilon(1e-13));
}

TEST_CASE("multipliers and derivatives", "[spectral]") {
  const GridSpec g = grid3(16);
  const auto f = forward_transform(sample(g, [](const Wavevector& x) { return std::sin(x[0]) * std::cos(2 * x[1]); }));
  const auto dx = derivative(f, 0);
  const auto dy = derivative(f, 1);
  const auto want_dx = forward_transform(sample(g, [](const Wavevector& x) { return std::cos(x[0]) * std::cos(2 * x[1]); }));
  const auto want_dy =
      forward_transform(sample(g, [](const Wavevector& x) { return -2 * std::sin(x[0]) * std::sin(2 * x[1]); }));
  CHECK(relative_l2_error(dx, want_dx) < 1e-13);
  CHECK(relative_l2_error(dy, want_dy) < 1e-13);
  CHECK(relative_l2_error(laplacian(f), -5.0 * f) < 1e-13);
  CHECK(relative_l2_error(inverse_laplacian(f), (1.0 / 5.0) * f) < 1e-13);

  CHECK_THROWS_AS(apply_multiplier(f, [](const Wavevector& k) { return cplx(1.0 / (k[0] - 1.0), 0.0); }, 0.0),
                  std::domain_error);
  const auto id = apply_multiplier(f, [](const Wavevector&) { return cplx(1.0, 0.0); }, 1.0);
  CHECK(relative_l2_error(id, f) == 0.0);

  SpectralField with_mean = f;
  with_mean.data()[0] = 1.0;
  CHECK_THROWS_AS(inverse_laplacian(with_mean), std::invalid_argument);
}

TEST_CASE("Leray projection and jacobian", "[spectral]") {
  const GridSpec g = grid3(16);
  auto rng = SplitMix64::stream(11, "leray");
  RandomFieldSpec spec;
  spec.components = 3;
  spec.max_index = 6;
  const auto u = random_field(g, spec, rng);
  const auto pu = leray_project(u);
  CHECK(spectral_l2(divergence(pu)) < 1e-13 * spectral_l2(pu));
  CHECK(relative_l2_error(leray_project(pu), pu) < 1e-14);
  CHECK(hermitian_defect(pu) < 1e-16);
  const auto J = jacobian(pu);
  SpectralField trace(g, 1);
  for (int a = 0; a < 3; ++a) trace += J.extract(a * 3 + a);
  CHECK(spectral_l2(trace) < 1e-13 * spectral_l2(J));
  CHECK_THROWS_AS(leray_project(SpectralField(g, 1)), std::invalid_argument);
}

TEST_CASE("random fields are reproducible and real", "[random]") {
  const GridSpec g = grid3(16);
  auto a = SplitMix64::stream(5, "field");
  auto b = SplitMix64::stream(5, "field");
  auto c = SplitMix64::stream(6, "field");
  RandomFieldSpec spec;
  const auto fa = random_field(g, spec, a);
  const auto fb = random_field(g, spec, b);
  const auto fc = random_field(g, spec, c);
  CHECK(relative_l2_error(fa, fb) == 0.0);
  CHECK(relative_l2_error(fa, fc) > 0.1);
  CHECK(hermitian_defect(fa) == 0.0);
  CHECK(fa.zero_mean());
  CHECK(spectral_l2(fa) == Approx(1.0).epsilon(1e-14));
  CHECK(spectrum_within(fa, spec.max_index));
}

TEST_CASE("bsnap round trip", "[snapshot]") {
  const GridSpec g{3, 8, 1.5};
  auto rng = SplitMix64::stream(3, "snap");
  RandomFieldSpec spec;
  spec.components = 3;
  spec.max_index = 3;
  const auto u = random_field(g, spec, rng);
  std::stringstream ss;
  write_bsnap(ss, u);
  const auto back = read_bsnap(ss);
  CHECK(back.grid() == g);
  CHECK(relative_l2_error(back, u) == 0.0);

  std::stringstream bad("NOTASNAP");
  CHECK_THROWS_AS(read_bsnap(bad), std::runtime_error);
  std::string raw = ss.str();
  std::stringstream cut(raw.substr(0, raw.size() / 2));
  CHECK_THROWS_AS(read_bsnap(cut), std::runtime_error);
}
