#include "wj/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "detail/loglog_fit.hpp"
#include "wj/error.hpp"

namespace wj {

namespace {

// A matrix polynomial p evaluated on the support of mu, stored as the rows
// L_j* p(x_j) where W_j = L_j L_j*. Inner products become Q* P.
using Row = std::array<Complex, 2>;
using Stack = std::vector<Row>;

Matrix2 inner(const Stack& q, const Stack& p) {
  Complex g00 = 0.0, g01 = 0.0, g10 = 0.0, g11 = 0.0;
  for (std::size_t r = 0; r < q.size(); ++r) {
    g00 += std::conj(q[r][0]) * p[r][0];
    g01 += std::conj(q[r][0]) * p[r][1];
    g10 += std::conj(q[r][1]) * p[r][0];
    g11 += std::conj(q[r][1]) * p[r][1];
  }
  return Matrix2(g00, g01, g10, g11);
}

void subtract_times(Stack& target, const Stack& q, const Matrix2& c) {
  for (std::size_t r = 0; r < target.size(); ++r) {
    target[r][0] -= q[r][0] * c(0, 0) + q[r][1] * c(1, 0);
    target[r][1] -= q[r][0] * c(0, 1) + q[r][1] * c(1, 1);
  }
}

Stack times(const Stack& q, const Matrix2& c) {
  Stack out(q.size());
  for (std::size_t r = 0; r < q.size(); ++r) {
    out[r][0] = q[r][0] * c(0, 0) + q[r][1] * c(1, 0);
    out[r][1] = q[r][0] * c(0, 1) + q[r][1] * c(1, 1);
  }
  return out;
}

Matrix2 hermitian_part(const Matrix2& m) { return 0.5 * (m + m.adjoint()); }

Matrix2 sigma1_conj(Complex b) { return Matrix2(0.0, b, std::conj(b), 0.0); }

}  // namespace

LanczosResult block_lanczos(const DiscreteMatrixMeasure& m, std::size_t depth, const Tolerances& tol) {
  if (depth == 0) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (m.size() == 0) throw Error(ErrorKind::InvalidMeasure, "empty measure");

  Stack q0;
  std::vector<double> x;
  double xmax = 0.0;
  for (const auto& a : m.atoms()) {
    const auto eig = hermitian_eig(a.W, tol);
    const double top = std::max(eig.eigenvalues.back(), 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
      const double l = eig.eigenvalues[i];
      if (!(l > tol.rank * top)) continue;
      const double root = std::sqrt(l);
      q0.push_back({root * std::conj(eig.eigenvectors(0, i)), root * std::conj(eig.eigenvectors(1, i))});
      x.push_back(a.x);
    }
    xmax = std::max(xmax, std::abs(a.x));
  }
  const double stop = tol.rank * std::max(1.0, xmax) * std::max(1.0, xmax);

  LanczosResult out;
  std::vector<Stack> basis{std::move(q0)};
  Matrix2 a_prev;
  for (std::size_t n = 0; n < depth; ++n) {
    const Stack& qn = basis.back();
    Stack r = qn;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i][0] *= x[i];
      r[i][1] *= x[i];
    }
    const Matrix2 bn = hermitian_part(inner(qn, r));
    out.blocks.B.push_back(bn);

    if (n > 0) subtract_times(r, basis[n - 1], a_prev.adjoint());
    subtract_times(r, qn, bn);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qk : basis) subtract_times(r, qk, inner(qk, r));

    const Matrix2 gram = hermitian_part(inner(r, r));
    const auto eig = hermitian_eig(gram, tol);
    if (eig.eigenvalues.front() < stop) {
      out.terminated = true;
      out.terminal_min_eig = eig.eigenvalues.front();
      break;
    }
    if (n + 1 == depth) break;
    const auto& v = eig.eigenvectors;
    const double s0 = std::sqrt(eig.eigenvalues[0]);
    const double s1 = std::sqrt(eig.eigenvalues[1]);
    auto assemble = [&](double f0, double f1) {
      return Matrix2(f0 * v(0, 0) * std::conj(v(0, 0)) + f1 * v(0, 1) * std::conj(v(0, 1)),
                     f0 * v(0, 0) * std::conj(v(1, 0)) + f1 * v(0, 1) * std::conj(v(1, 1)),
                     f0 * v(1, 0) * std::conj(v(0, 0)) + f1 * v(1, 1) * std::conj(v(0, 1)),
                     f0 * v(1, 0) * std::conj(v(1, 0)) + f1 * v(1, 1) * std::conj(v(1, 1)));
    };
    const Matrix2 an = assemble(s0, s1);
    out.blocks.A.push_back(an);
    a_prev = an;
    basis.push_back(times(r, assemble(1.0 / s0, 1.0 / s1)));
  }
  return out;
}

GaugeResult gauge_fix(const BlockCoefficients& bc, const Tolerances& tol) {
  if (bc.B.empty() || bc.B.size() != bc.A.size() + 1)
    throw Error(ErrorKind::InvalidArgument, "block coefficients need |B| = |A| + 1 >= 1");

  GaugeTrace trace;
  trace.W.push_back(Matrix2::identity());
  std::vector<double> a;
  std::vector<Complex> b;

  auto read_b = [&](std::size_t n) {
    const Matrix2& w = trace.W[n];
    const Matrix2 t = w.adjoint() * bc.B[n] * w;
    const Complex bn = t(0, 1);
    GaugeStep step;
    step.antidiagonal_defect = std::abs(t(0, 0)) + std::abs(t(1, 1));
    step.conjugacy_defect = std::abs(t(1, 0) - std::conj(bn));
    b.push_back(bn);
    trace.steps.push_back(step);
  };

  for (std::size_t n = 0; n < bc.A.size(); ++n) {
    read_b(n);
    const Matrix2 c = trace.W[n].adjoint() * bc.A[n];
    ScalarPolar polar;
    try {
      polar = polar_scalar_unitary(c, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularBlock) throw;
      trace.singular_block = true;
      return {JacobiCoefficients(std::move(a), std::move(b)), std::move(trace)};
    }
    const double an = polar.scale;
    trace.steps.back().polar_defect = (c * c.adjoint() - Matrix2::diagonal(an * an, an * an)).max_abs() / (an * an);
    a.push_back(an);
    trace.W.push_back(polar.unitary.adjoint() * Matrix2::sigma1());
  }
  read_b(bc.A.size());
  return {JacobiCoefficients(std::move(a), std::move(b)), std::move(trace)};
}

InverseResult inverse_map_detailed(const SpectralData& sd, std::size_t depth, const Tolerances& tol) {
  const auto mu = to_matrix_measure(sd);
  const auto lanczos = block_lanczos(mu, depth, tol);
  auto fixed = gauge_fix(lanczos.blocks, tol);
  const bool zero_atom = std::any_of(sd.atoms().begin(), sd.atoms().end(),
                                     [](const SpectralAtom& at) { return at.s == 0.0; });
  return {std::move(fixed.coefficients), std::move(fixed.trace), lanczos.terminated, zero_atom};
}

JacobiCoefficients inverse_map(const SpectralData& sd, std::size_t depth, const Tolerances& tol) {
  return inverse_map_detailed(sd, depth, tol).coefficients;
}

Leading leading_from_moments(const DiscreteMatrixMeasure& m) {
  const Complex b0 = moments(m, 1)(0, 1);
  const double radicand = moments(m, 2)(0, 0).real() - std::norm(b0);
  if (radicand < -1e-10)
    throw Error(ErrorKind::InvalidMeasure, "(m_2)_00 < |(m_1)_01|^2: moments violate Cauchy-Schwarz");
  return {b0, std::sqrt(std::max(radicand, 0.0))};
}

Matrix2 weyl_R(const DiscreteMatrixMeasure& m, Complex z, const Tolerances& tol) { return stieltjes(m, z, tol); }

Matrix2 weyl_R_dense(const BlockCoefficients& bc, std::size_t blocks, Complex z) {
  DenseMatrix shifted = dense_block_matrix(bc, blocks);
  for (std::size_t k = 0; k < shifted.size(); ++k) shifted(k, k) -= z;
  std::vector<Complex> e(shifted.size(), 0.0);
  e[0] = 1.0;
  const auto c0 = solve(shifted, e);
  e[0] = 0.0;
  e[1] = 1.0;
  const auto c1 = solve(shifted, e);
  return Matrix2(c0[0], c1[0], c0[1], c1[1]);
}

Matrix2 strip_weyl(const Matrix2& r, Complex z, Complex b0, double a0, const Tolerances& tol) {
  if (!(a0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "a0 must be positive");
  const Complex det = r.det();
  if (std::abs(det) <= tol.pole) throw Error(ErrorKind::SingularWeylValue, "det R vanishes");
  const Complex d = 1.0 / det;
  const Matrix2 inner_part(d * r(0, 0) + z, -d * r(1, 0) - std::conj(b0), -d * r(0, 1) - b0, d * r(1, 1) + z);
  return (-1.0 / (a0 * a0)) * inner_part;
}

ExpansionFit expansion_check(const DiscreteMatrixMeasure& m, Complex b0, double a0, std::span<const double> radii,
                             double angle, const Tolerances& tol) {
  if (radii.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw Error(ErrorKind::InvalidArgument, "radii must be positive and increasing");

  const Matrix2 b = sigma1_conj(b0);
  const Matrix2 c3 = Matrix2::diagonal(a0 * a0, a0 * a0) + b * b;
  const Matrix2 id = Matrix2::identity();
  constexpr double kFloor = 1e3 * std::numeric_limits<double>::epsilon();
  std::vector<double> lx, ly;
  for (double rad : radii) {
    const Complex z = std::polar(rad, angle);
    const Matrix2 r = weyl_R(m, z, tol);
    const Matrix2 e = r + id / z + b / (z * z) + c3 / (z * z * z);
    const double norm = spectral_norm_2x2(e);
    if (!(norm > kFloor * spectral_norm_2x2(r))) break;
    lx.push_back(std::log(rad));
    ly.push_back(std::log(norm));
  }
  ExpansionFit f;
  f.points = lx.size();
  f.wide_confidence = radii.back() / radii.front() < 100.0 || f.points < 4;
  if (f.points < 2) {
    f.slope = -std::numeric_limits<double>::infinity();
    f.wide_confidence = true;
    return f;
  }
  const auto line = detail::fit_line(lx, ly);
  f.slope = line.slope;
  f.intercept = line.intercept;
  f.max_deviation = line.max_deviation;
  return f;
}

}  // namespace wj
