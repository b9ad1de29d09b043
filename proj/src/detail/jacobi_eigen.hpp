#pragma once

// Cyclic two-sided Jacobi rotations for complex Hermitian matrices, generic in
// the real scalar so the same sweep runs in double and in binary128.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace wj::detail {

template <class Real>
struct Cx {
  Real re{};
  Real im{};
};

template <class Real>
Cx<Real> operator+(Cx<Real> x, Cx<Real> y) { return {x.re + y.re, x.im + y.im}; }
template <class Real>
Cx<Real> operator-(Cx<Real> x, Cx<Real> y) { return {x.re - y.re, x.im - y.im}; }
template <class Real>
Cx<Real> operator*(Cx<Real> x, Cx<Real> y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
template <class Real>
Cx<Real> operator*(Real s, Cx<Real> x) { return {s * x.re, s * x.im}; }
template <class Real>
Cx<Real> conj(Cx<Real> x) { return {x.re, -x.im}; }
template <class Real>
Real norm2(Cx<Real> x) { return x.re * x.re + x.im * x.im; }

template <class Real>
struct JacobiResult {
  std::size_t n = 0;
  std::vector<Real> values;           // ascending
  std::vector<Cx<Real>> vectors;      // row-major, column j is eigenvector j
  bool converged = false;
  int sweeps = 0;
};

/// `a` is row-major n x n and assumed exactly Hermitian. Convergence when the
/// off-diagonal Frobenius mass drops below rel_threshold * ||a||_F.
template <class Real>
JacobiResult<Real> jacobi_hermitian(std::vector<Cx<Real>> a, std::size_t n, Real rel_threshold,
                                    int max_sweeps) {
  using std::sqrt;
  auto at = [&](std::size_t i, std::size_t j) -> Cx<Real>& { return a[i * n + j]; };

  JacobiResult<Real> out;
  out.n = n;
  std::vector<Cx<Real>> v(n * n);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i].re = Real(1);

  Real total = Real(0);
  for (const auto& x : a) total += norm2(x);
  const Real target = rel_threshold * rel_threshold * total;

  auto off_mass = [&] {
    Real s = Real(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += norm2(at(i, j));
    return s;
  };

  int sweep = 0;
  bool converged = off_mass() <= target;
  while (!converged && sweep < max_sweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Cx<Real> g = at(p, q);
        const Real g2 = norm2(g);
        if (g2 == Real(0)) continue;
        const Real gabs = sqrt(g2);
        const Cx<Real> e{g.re / gabs, g.im / gabs};
        const Real app = at(p, p).re;
        const Real aqq = at(q, q).re;
        const Real tau = (aqq - app) / (Real(2) * gabs);
        const Real t = (tau >= Real(0) ? Real(1) : Real(-1)) /
                       ((tau >= Real(0) ? tau : -tau) + sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / sqrt(Real(1) + t * t);
        const Real s = t * c;
        const Cx<Real> se = s * e;
        const Cx<Real> se_bar = conj(se);

        // A <- A U, V <- V U with U_pp = c, U_pq = s e, U_qp = -s conj(e), U_qq = c.
        for (std::size_t k = 0; k < n; ++k) {
          const Cx<Real> akp = at(k, p);
          const Cx<Real> akq = at(k, q);
          at(k, p) = c * akp - se_bar * akq;
          at(k, q) = se * akp + c * akq;
          const Cx<Real> vkp = v[k * n + p];
          const Cx<Real> vkq = v[k * n + q];
          v[k * n + p] = c * vkp - se_bar * vkq;
          v[k * n + q] = se * vkp + c * vkq;
        }
        // A <- U* A
        for (std::size_t k = 0; k < n; ++k) {
          const Cx<Real> apk = at(p, k);
          const Cx<Real> aqk = at(q, k);
          at(p, k) = c * apk - se * aqk;
          at(q, k) = se_bar * apk + c * aqk;
        }
        at(p, q) = Cx<Real>{};
        at(q, p) = Cx<Real>{};
        at(p, p) = Cx<Real>{app - t * gabs, Real(0)};
        at(q, q) = Cx<Real>{aqq + t * gabs, Real(0)};
      }
    }
    converged = off_mass() <= target;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return at(i, i).re < at(j, j).re; });
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]).re;
    for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + j] = v[k * n + order[j]];
  }
  out.converged = converged;
  out.sweeps = sweep;
  return out;
}

}  // namespace wj::detail
