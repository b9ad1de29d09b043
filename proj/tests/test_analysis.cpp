#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "support.hpp"
#include "wj/analysis.hpp"
#include "wj/error.hpp"

using namespace wj;
using wjtest::Sampler;

namespace {

constexpr std::size_t kN = 10;

// Base with modest coefficients, and a copy whose b_k is moved by `delta`.
struct Pair {
  JacobiCoefficients base;
  JacobiCoefficients other;
};

Pair pair_differing_in_b(Sampler& rng, std::size_t k, Complex delta = 0.5) {
  const auto base = rng.coefficients(kN, 0.5, 1.0, 0.5);
  std::vector<Complex> b(base.b().begin(), base.b().end());
  b[k] += delta;
  return {base, JacobiCoefficients(std::vector<double>(base.a().begin(), base.a().end()), b)};
}

// The scaled M difference equals R(zeta) - R~(zeta) with zeta^2 = w, Im zeta > 0,
// so the dense resolvent of the embedding gives D(w) independently.
double oracle_D(const JacobiCoefficients& c1, const JacobiCoefficients& c2, Complex w) {
  Complex zeta = std::sqrt(w);
  if (zeta.imag() < 0) zeta = -zeta;
  return wjtest::norm2x2(wjtest::oracle_R(c1, kN, zeta) - wjtest::oracle_R(c2, kN, zeta));
}

}  // namespace

TEST_CASE("default_radii and parse_radii") {
  const auto r = default_radii();
  REQUIRE(r.size() == 9);
  CHECK(r.front() == doctest::Approx(10.0));
  CHECK(r.back() == doctest::Approx(1e5));
  CHECK(r[4] == doctest::Approx(1e3));

  const auto lin = parse_radii("1:5:5:lin");
  CHECK(lin == std::vector<double>{1, 2, 3, 4, 5});
  const auto lg = parse_radii("10:1000:3:log");
  CHECK(lg[1] == doctest::Approx(100.0));
  for (const char* bad : {"1:5:5", "5:1:3:log", "1:5:1:log", "1:5:5:cubic", "a:5:5:log", "0:5:5:lin"})
    CHECK_THROWS_AS(parse_radii(bad), Error);
}

TEST_CASE("scaled difference equals the plain difference of the block Weyl matrices") {
  Sampler rng(101);
  for (int t = 0; t < 10; ++t) {
    const auto p = pair_differing_in_b(rng, rng.size(0, 3));
    const auto s1 = direct_map(p.base, kN), s2 = direct_map(p.other, kN);
    for (int j = 0; j < 10; ++j) {
      const Complex w = std::polar(std::pow(10.0, rng.uniform(0.0, 2.0)), rng.uniform(0.1, 2 * std::numbers::pi - 0.1));
      CHECK(std::abs(scaled_weyl_difference(s1, s2, w) - oracle_D(p.base, p.other, w)) <= 1e-10);
    }
  }
}

TEST_CASE("identical data give the degenerate sentinel") {
  const auto sd = direct_map(wjtest::golden(), 2);
  const auto fit = borg_marchenko_fit(sd, sd);
  CHECK(fit.degenerate);
  CHECK(fit.slope == -std::numeric_limits<double>::infinity());
  CHECK(fit.dropped == 9);
}

TEST_CASE("borg_marchenko_fit argument checks") {
  const auto sd = direct_map(wjtest::golden(), 2);
  const std::vector<double> three{10, 100, 1000};
  const std::vector<double> narrow{10, 20, 30, 40, 50};
  const std::vector<double> unordered{10, 1000, 100, 10000};
  CHECK_THROWS_AS(borg_marchenko_fit(sd, sd, 0.0), Error);
  CHECK_THROWS_AS(borg_marchenko_fit(sd, sd, 2 * std::numbers::pi), Error);
  CHECK_THROWS_AS(borg_marchenko_fit(sd, sd, std::numbers::pi, three), Error);
  CHECK_THROWS_AS(borg_marchenko_fit(sd, sd, std::numbers::pi, narrow), Error);
  CHECK_THROWS_AS(borg_marchenko_fit(sd, sd, std::numbers::pi, unordered), Error);
}

TEST_CASE("fitted slope matches the slope of the dense-resolvent difference") {
  Sampler rng(103);
  for (std::size_t k = 0; k < 4; ++k) {
    for (int t = 0; t < 5; ++t) {
      const auto p = pair_differing_in_b(rng, k);
      const auto fit = borg_marchenko_fit(direct_map(p.base, kN), direct_map(p.other, kN));
      REQUIRE_FALSE(fit.degenerate);
      REQUIRE(fit.radii.size() >= 3);
      std::vector<double> d;
      for (double r : fit.radii) d.push_back(oracle_D(p.base, p.other, std::polar(r, std::numbers::pi)));
      CHECK(std::abs(fit.slope - wjtest::loglog_slope(fit.radii, d)) <= 0.05);
    }
  }
}

TEST_CASE("a first difference at b_k decays like |w|^-(k+1)") {
  Sampler rng(107);
  for (std::size_t k = 0; k < 4; ++k) {
    for (int t = 0; t < 5; ++t) {
      const auto p = pair_differing_in_b(rng, k);
      const auto fit = borg_marchenko_fit(direct_map(p.base, kN), direct_map(p.other, kN));
      CAPTURE(k);
      CHECK(std::abs(fit.slope + static_cast<double>(k + 1)) <= 0.2);
    }
  }
}

TEST_CASE("extending the agreement by one index lowers the slope by about one") {
  Sampler rng(109);
  for (int t = 0; t < 5; ++t) {
    const auto base = rng.coefficients(kN, 0.5, 1.0, 0.5);
    const auto s0 = direct_map(base, kN);
    double previous = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<Complex> b(base.b().begin(), base.b().end());
      b[k] += 0.5;
      const JacobiCoefficients other(std::vector<double>(base.a().begin(), base.a().end()), b);
      const double slope = borg_marchenko_fit(s0, direct_map(other, kN)).slope;
      if (k > 0) CHECK(std::abs(previous - slope - 1.0) <= 0.3);
      previous = slope;
    }
  }
}

TEST_CASE("classify") {
  const auto g = classify(direct_map(wjtest::golden(), 2));
  CHECK_FALSE(g.self_adjoint);
  CHECK_FALSE(g.free_diagonal);
  CHECK(g.max_im_psi == doctest::Approx(1.0));

  Sampler rng(113);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.size(1, 20);
    const auto c = rng.coefficients(n);
    std::vector<Complex> real_b(c.b().begin(), c.b().end());
    for (auto& x : real_b) x = x.real();
    const std::vector<double> a(c.a().begin(), c.a().end());
    const auto r = classify(direct_map(JacobiCoefficients(a, real_b), n));
    CHECK(r.self_adjoint);
    CHECK(r.max_im_psi <= 1e-10);
    const auto f = classify(direct_map(JacobiCoefficients(a, std::vector<Complex>(n, 0.0)), n));
    CHECK(f.free_diagonal);
    CHECK(f.self_adjoint);
    CHECK(f.max_abs_psi <= 1e-10);
  }
  // psi at s = 0 is ignored
  CHECK(classify(SpectralData({{0.0, 0.5, 0.0}, {1.0, 0.5, 0.25}})).max_abs_psi == 0.25);
}

TEST_CASE("continuity_check") {
  const auto bank = default_test_bank();
  REQUIRE(bank.size() == 5);
  CHECK(bank[0].h(0.0) == 1.0);
  CHECK(bank[4].h(1.5) == 1.0);

  SUBCASE("constant sequence") {
    const auto c = wjtest::golden();
    const std::vector<JacobiCoefficients> seq(4, c);
    for (const auto& p : continuity_check(seq, c, bank, 2)) {
      CHECK(p.nu_residual == 0.0);
      CHECK(p.psi_residual == 0.0);
      CHECK(p.strong_residual == 0.0);
    }
  }
  SUBCASE("perturbation of b_0 by 1/N") {
    Sampler rng(127);
    const std::size_t n = 8;
    const auto limit = rng.coefficients(n);
    std::vector<JacobiCoefficients> seq;
    for (int N = 1; N <= 256; N *= 2) {
      std::vector<Complex> b(limit.b().begin(), limit.b().end());
      b[0] += 1.0 / N;
      seq.emplace_back(std::vector<double>(limit.a().begin(), limit.a().end()), b);
    }
    const auto series = continuity_check(seq, limit, bank, n);
    for (std::size_t i = 0; i < series.size(); ++i)
      CHECK(series[i].strong_residual == doctest::Approx(1.0 / std::pow(2.0, static_cast<double>(i))));
    // first-order behaviour: halving the perturbation roughly halves the residuals
    for (std::size_t i = 3; i + 1 < series.size(); ++i) {
      CHECK(series[i + 1].nu_residual < series[i].nu_residual);
      CHECK(series[i + 1].psi_residual < series[i].psi_residual);
      CHECK(series[i + 1].psi_residual / series[i].psi_residual == doctest::Approx(0.5).epsilon(0.1));
    }
  }
}
