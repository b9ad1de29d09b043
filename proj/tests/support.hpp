#pragma once

// Shared helpers for the test binaries: random instances and dense
// reference computations done with Eigen, independent of the library's own
// eigensolver and resolvent code.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "wj/direct.hpp"
#include "wj/jacobi.hpp"

namespace wjtest {

using wj::Complex;
using CMat = Eigen::MatrixXcd;

inline const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

inline wj::JacobiCoefficients golden() { return wj::JacobiCoefficients({1.0}, {Complex(0, 1), 0.0}); }

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  // a in [a_lo, a_hi], Re b and Im b in [-b_max, b_max]
  wj::JacobiCoefficients coefficients(std::size_t n, double a_lo = 0.5, double a_hi = 2.0, double b_max = 2.0) {
    std::vector<double> a(n - 1);
    std::vector<Complex> b(n);
    for (auto& x : a) x = uniform(a_lo, a_hi);
    for (auto& x : b) {
      const double re = uniform(-b_max, b_max);
      x = Complex(re, uniform(-b_max, b_max));
    }
    return wj::JacobiCoefficients(std::move(a), std::move(b));
  }

  CMat hermitian(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(uniform(-1, 1), uniform(-1, 1));
    return (m + m.adjoint()) / 2.0;
  }

  Complex upper_half_plane() {
    const double r = std::pow(10.0, uniform(-1.0, 1.5));
    return std::polar(r, uniform(0.05, std::numbers::pi - 0.05));
  }

  std::mt19937_64 rng;
};

inline CMat to_eigen(const wj::DenseMatrix& m) {
  CMat e(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
  return e;
}

inline wj::DenseMatrix from_eigen(const CMat& e) {
  wj::DenseMatrix m(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline CMat jacobi_matrix(const wj::JacobiCoefficients& c, std::size_t n) {
  CMat j = CMat::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) j(k, k) = c.b()[k];
  for (std::size_t k = 0; k + 1 < n; ++k) j(k, k + 1) = j(k + 1, k) = c.a()[k];
  return j;
}

struct OracleAtom {
  double s;
  double weight;
  Complex psi;
};

// Spectral data through Eigen's Hermitian solver on J*J, grouping
// eigenvalues closer than 1e-9 of the spectral radius.
inline std::vector<OracleAtom> oracle_spectral(const wj::JacobiCoefficients& c, std::size_t n) {
  const CMat j = jacobi_matrix(c, n);
  Eigen::SelfAdjointEigenSolver<CMat> es(j.adjoint() * j);
  const auto& lam = es.eigenvalues();
  const CMat& v = es.eigenvectors();
  const double radius = lam.cwiseAbs().maxCoeff();
  std::vector<OracleAtom> out;
  std::vector<Complex> num;
  double last = -1e300;
  std::vector<double> sum;
  std::vector<int> count;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (out.empty() || lam(k) - last > 1e-9 * radius) {
      out.push_back({0, 0, 0});
      num.push_back(0.0);
      sum.push_back(0.0);
      count.push_back(0);
    }
    last = lam(k);
    const Eigen::VectorXcd vk = v.col(k);
    const Eigen::VectorXcd jv = j * vk;
    out.back().weight += std::norm(vk(0));
    num.back() += jv(0) * std::conj(vk(0));
    sum.back() += lam(k);
    ++count.back();
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].s = std::sqrt(std::max(sum[i] / count[i], 0.0));
    out[i].psi = out[i].s > 1e-10 * std::sqrt(radius) ? num[i] / (out[i].s * out[i].weight) : 0.0;
  }
  return out;
}

// [[0, J], [J*, 0]]
inline CMat embedded(const wj::JacobiCoefficients& c, std::size_t n) {
  const CMat j = jacobi_matrix(c, n);
  CMat e = CMat::Zero(2 * n, 2 * n);
  e.topRightCorner(n, n) = j;
  e.bottomLeftCorner(n, n) = j.adjoint();
  return e;
}

// Top-left 2x2 block of the resolvent of the interleaved embedding at zeta,
// read off the direct-sum ordering (indices 0 and n).
inline wj::Matrix2 oracle_R(const wj::JacobiCoefficients& c, std::size_t n, Complex zeta) {
  CMat e = embedded(c, n);
  e -= zeta * CMat::Identity(2 * n, 2 * n);
  const CMat g = e.partialPivLu().inverse();
  const auto N = static_cast<Eigen::Index>(n);
  return wj::Matrix2(g(0, 0), g(0, N), g(N, 0), g(N, N));
}

inline double norm2x2(const wj::Matrix2& m) {
  Eigen::Matrix2cd e;
  e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return Eigen::JacobiSVD<Eigen::Matrix2cd>(e).singularValues()(0);
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace wjtest
