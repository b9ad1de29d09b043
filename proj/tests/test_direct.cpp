#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "wj/direct.hpp"
#include "wj/error.hpp"

using namespace wj;
using wjtest::kPhi;
using wjtest::Sampler;

TEST_CASE("direct_map: 1x1 with b = i") {
  const auto sd = direct_map(JacobiCoefficients({}, {Complex(0, 1)}), 1);
  REQUIRE(sd.size() == 1);
  CHECK(sd.atoms()[0].s == doctest::Approx(1.0));
  CHECK(sd.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(sd.atoms()[0].psi - Complex(0, 1)) < 1e-15);
}

TEST_CASE("direct_map: free 2x2") {
  const auto res = direct_map_detailed(JacobiCoefficients({1.0}, {0.0, 0.0}), 2);
  REQUIRE(res.data.size() == 1);
  CHECK(res.data.atoms()[0].s == doctest::Approx(1.0));
  CHECK(res.data.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(res.data.atoms()[0].psi) < 1e-15);
  CHECK(res.diagnostics.max_multiplicity == 2);
}

TEST_CASE("direct_map: golden example in closed form") {
  const auto sd = direct_map(wjtest::golden(), 2);
  REQUIRE(sd.size() == 2);
  const auto& lo = sd.atoms()[0];
  const auto& hi = sd.atoms()[1];
  CHECK(std::abs(lo.s - 1.0 / kPhi) < 1e-15);
  CHECK(std::abs(hi.s - kPhi) < 1e-15);
  CHECK(std::abs(lo.weight - (5.0 - std::sqrt(5.0)) / 10.0) < 1e-15);
  CHECK(std::abs(hi.weight - (5.0 + std::sqrt(5.0)) / 10.0) < 1e-15);
  CHECK(std::abs(lo.psi - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(hi.psi - Complex(0, 1)) < 1e-15);

  // first moments reproduce b_0 and (J*J)_00
  Complex m1 = 0.0;
  double m2 = 0.0;
  for (const auto& a : sd.atoms()) {
    m1 += a.weight * a.s * a.psi;
    m2 += a.weight * a.s * a.s;
  }
  CHECK(std::abs(m1 - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(m2 - 2.0) < 1e-14);
}

TEST_CASE("direct_map agrees with an independent eigen-decomposition") {
  Sampler rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.size(1, 12);
    const auto c = rng.coefficients(n);
    const auto sd = direct_map(c, n);
    const auto ref = wjtest::oracle_spectral(c, n);
    REQUIRE(sd.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(std::abs(sd.atoms()[k].s - ref[k].s) < 1e-10);
      CHECK(std::abs(sd.atoms()[k].weight - ref[k].weight) < 1e-10);
      // the double-precision reference loses relative accuracy on tiny weights
      if (ref[k].weight > 1e-6) CHECK(std::abs(sd.atoms()[k].psi - ref[k].psi) < 1e-6);
    }
  }
}

TEST_CASE("direct_map invariants on random inputs") {
  Sampler rng(23);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.size(1, 20);
    const auto sd = direct_map(rng.coefficients(n), n);
    double total = 0.0;
    for (const auto& a : sd.atoms()) {
      total += a.weight;
      CHECK(std::abs(a.psi) <= 1.0 + 1e-10);
      if (a.s == 0.0) CHECK(a.psi == Complex(0.0));
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("direct_map: zero operator gives an atom at s = 0") {
  const auto res = direct_map_detailed(JacobiCoefficients({}, {0.0}), 1);
  REQUIRE(res.data.size() == 1);
  CHECK(res.data.atoms()[0].s == 0.0);
  CHECK(res.data.atoms()[0].psi == Complex(0.0));
}

TEST_CASE("direct_map: tiny singular value is mapped to s = 0 and flagged") {
  // J = [[1, 1], [1, 1 + e]] has det J = e, so its small singular value is about e / 2
  const auto res = direct_map_detailed(JacobiCoefficients({1.0}, {1.0, 1.0 + 1e-13}), 2);
  REQUIRE(res.data.size() == 2);
  CHECK(res.data.atoms()[0].s == 0.0);
  CHECK(std::abs(res.data.atoms()[0].weight - 0.5) < 1e-10);
  CHECK(res.data.atoms()[0].psi == Complex(0.0));
  CHECK(res.diagnostics.zeroed_small_s == 1);
}

TEST_CASE("SpectralData validation") {
  CHECK_THROWS_AS(SpectralData({{1.0, 0.5, 0.0}}), Error);
  CHECK_THROWS_AS(SpectralData({{1.0, 1.0, Complex(0, 1.5)}}), Error);
  CHECK_THROWS_AS(SpectralData({{0.0, 1.0, Complex(0.5)}}), Error);
  CHECK_THROWS_AS(SpectralData({{2.0, 0.5, 0.0}, {1.0, 0.5, 0.0}}), Error);
  CHECK_THROWS_AS(SpectralData({{-1.0, 1.0, 0.0}}), Error);
  CHECK_NOTHROW(SpectralData({{0.0, 0.5, 0.0}, {1.0, 0.5, Complex(0, 1)}}));
}

TEST_CASE("weyl_M examples") {
  const SpectralData one({{1.0, 1.0, Complex(0, 1)}});
  for (const Complex z : {Complex(-1, 0), Complex(0, 2), Complex(3, -1)}) {
    const Matrix2 m = weyl_M(one, z);
    const Complex f = 1.0 / (1.0 - z);
    CHECK(std::abs(m(0, 0) - f) < 1e-15);
    CHECK(std::abs(m(0, 1) - Complex(0, 1) * f) < 1e-15);
    CHECK(std::abs(m(1, 0) + Complex(0, 1) * f) < 1e-15);
    CHECK(std::abs(m(1, 1) - f) < 1e-15);
  }
  const SpectralData free_atom({{1.0, 1.0, 0.0}});
  const Matrix2 mf = weyl_M(free_atom, Complex(0.3, 2));
  CHECK(mf(0, 1) == Complex(0.0));
  CHECK(mf(1, 0) == Complex(0.0));

  const auto g = direct_map(wjtest::golden(), 2);
  const double w_lo = (5.0 - std::sqrt(5.0)) / 10.0, w_hi = (5.0 + std::sqrt(5.0)) / 10.0;
  const double expect = w_lo / (1.0 / (kPhi * kPhi) + 1.0) + w_hi / (kPhi * kPhi + 1.0);
  CHECK(std::abs(weyl_M(g, -1.0)(0, 0) - expect) < 1e-14);

  try {
    weyl_M(one, Complex(1.0, 1e-10));
    FAIL("expected PoleProximity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
}

TEST_CASE("diagonal identity, Herglotz property and the R assembled from M") {
  Sampler rng(31);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.size(1, 15);
    const auto c = rng.coefficients(n);
    const auto sd = direct_map(c, n);
    for (int k = 0; k < 20; ++k) {
      const Complex zeta = rng.upper_half_plane();
      CHECK(diagonal_identity_residual(sd, zeta) <= 1e-10);
      // R(zeta) from M against the dense resolvent of the embedding
      const Matrix2 r = weyl_R_from_M(sd, zeta);
      const Matrix2 ref = wjtest::oracle_R(c, n, zeta);
      CHECK(wjtest::norm2x2(r - ref) <= 1e-9 * (1.0 + wjtest::norm2x2(ref)));

      const Complex z = rng.upper_half_plane();
      const Matrix2 m = weyl_M(sd, z);
      const Matrix2 im = (m - m.adjoint()) / Complex(0, 2);
      const double tr = im.trace().real();
      const double det = im.det().real();
      CHECK(tr >= -1e-12);
      CHECK(det >= -1e-12 * (1.0 + tr * tr));
    }
  }
}

TEST_CASE("moment_check") {
  SUBCASE("k = 0 is exact") {
    const auto c = wjtest::golden();
    const auto r = moment_check(c, direct_map(c, 2), 0, 2);
    CHECK(r.even < 1e-15);
    CHECK(r.odd < 1e-15);
  }
  SUBCASE("(a = [1], b = [1 + i, 0]), k = 1") {
    const JacobiCoefficients c({1.0}, {Complex(1, 1), 0.0});
    const auto sd = direct_map(c, 2);
    double m2 = 0.0;
    for (const auto& a : sd.atoms()) m2 += a.weight * a.s * a.s;
    CHECK(std::abs(m2 - 3.0) < 1e-14);
    const auto sd_big = direct_map(JacobiCoefficients({1.0, 1.0, 1.0}, {Complex(1, 1), 0.0, 0.0, 0.0}), 4);
    const auto r = moment_check(JacobiCoefficients({1.0, 1.0, 1.0}, {Complex(1, 1), 0.0, 0.0, 0.0}), sd_big, 1, 4);
    CHECK(r.even < 1e-13);
    CHECK(r.odd < 1e-13);
  }
  SUBCASE("random instances up to k = 5") {
    Sampler rng(37);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = rng.size(14, 20);
      const auto c = rng.coefficients(n);
      const auto sd = direct_map(c, n);
      double scale = 0.0;
      for (double a : c.a()) scale = std::max(scale, a);
      for (Complex b : c.b()) scale = std::max(scale, std::abs(b));
      for (std::size_t k = 0; k <= 5; ++k) {
        const auto r = moment_check(c, sd, k, n);
        const double bound = 1e-10 * std::pow(1.0 + scale, 2.0 * k);
        CHECK(r.even <= bound);
        CHECK(r.odd <= bound);
      }
    }
  }
  SUBCASE("truncation too small") {
    const auto c = wjtest::golden();
    try {
      moment_check(c, direct_map(c, 2), 1, 2);
      FAIL("expected TruncationTooSmall");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TruncationTooSmall);
    }
  }
}

TEST_CASE("intertwining_check") {
  Sampler rng(41);
  const std::vector<Complex> one{1.0}, square{0.0, 0.0, 1.0}, quartic{0.0, 0.0, 0.0, 0.0, 1.0};
  for (int t = 0; t < 5; ++t) {
    const auto c = rng.coefficients(12);
    CHECK(intertwining_check(c, 12, one) <= 1e-12);
    CHECK(intertwining_check(c, 12, square) <= 1e-12 * std::pow(1.0 + wjtest::jacobi_matrix(c, 12).norm(), 3));
    CHECK(intertwining_check(c, 12, quartic) <= 1e-9 * std::pow(1.0 + wjtest::jacobi_matrix(c, 12).norm(), 5));
  }
  // odd powers of |J| intertwine as well
  const std::vector<Complex> cubic{0.0, 1.0, 0.0, 1.0};
  CHECK(intertwining_check(rng.coefficients(10), 10, cubic) <= 1e-9);
  CHECK_THROWS_AS(intertwining_check(wjtest::golden(), 2, quartic), Error);
}

TEST_CASE("cyclicity_check") {
  CHECK(cyclicity_check(wjtest::golden(), 2) == 0);
  CHECK(cyclicity_check(JacobiCoefficients({}, {Complex(0.3, 0.2)}), 1) == 0);
  for (std::size_t n : {2, 4, 6, 8}) {
    const JacobiCoefficients c(std::vector<double>(n - 1, 1.0), std::vector<Complex>(n, 0.0));
    CHECK(cyclicity_check(c, n) == 0);
  }
  Sampler rng(43);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = rng.size(1, 15);
    CHECK(cyclicity_check(rng.coefficients(n), n) == 0);
  }
}
