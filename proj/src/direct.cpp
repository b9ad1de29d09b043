#include "wj/direct.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include <boost/multiprecision/float128.hpp>

#include "detail/jacobi_eigen.hpp"
#include "wj/error.hpp"

namespace wj {

namespace {

using Quad = boost::multiprecision::float128;
using QCx = detail::Cx<Quad>;

constexpr double kWeightSumTol = 1e-10;
constexpr double kPhaseBoundTol = 1e-10;

void check_dimension(const JacobiCoefficients& c, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (n > c.size())
    throw Error(ErrorKind::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds |b| = " + std::to_string(c.size()));
}

Complex to_complex(const QCx& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

}  // namespace

SpectralData::SpectralData(std::vector<SpectralAtom> atoms) : atoms_(std::move(atoms)) {
  double total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& at = atoms_[k];
    const std::string where = "atom " + std::to_string(k);
    if (!std::isfinite(at.s) || at.s < 0.0)
      throw Error(ErrorKind::InvalidSpectralData, where + ": s must be finite and >= 0");
    if (k > 0 && !(at.s > atoms_[k - 1].s))
      throw Error(ErrorKind::InvalidSpectralData, where + ": abscissae must be strictly increasing");
    if (!std::isfinite(at.weight) || !(at.weight > 0.0))
      throw Error(ErrorKind::InvalidSpectralData, where + ": weight must be finite and > 0");
    if (!std::isfinite(at.psi.real()) || !std::isfinite(at.psi.imag()) ||
        std::abs(at.psi) > 1.0 + kPhaseBoundTol)
      throw Error(ErrorKind::InvalidSpectralData, where + ": |psi| must not exceed 1");
    if (at.s == 0.0 && at.psi != Complex(0.0))
      throw Error(ErrorKind::InvalidSpectralData, where + ": psi must vanish at s = 0");
    total += at.weight;
  }
  if (!atoms_.empty() && std::abs(total - 1.0) > kWeightSumTol)
    throw Error(ErrorKind::InvalidSpectralData, "weights must sum to 1");
  if (atoms_.empty()) throw Error(ErrorKind::InvalidSpectralData, "spectral data needs at least one atom");
}

DirectMapResult direct_map_detailed(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol) {
  check_dimension(c, n);

  // J in binary128; the input coefficients are exactly representable.
  std::vector<QCx> j(n * n);
  for (std::size_t k = 0; k < n; ++k) j[k * n + k] = {Quad(c.b()[k].real()), Quad(c.b()[k].imag())};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    j[k * n + k + 1] = {Quad(c.a()[k]), Quad(0)};
    j[(k + 1) * n + k] = {Quad(c.a()[k]), Quad(0)};
  }

  // J*J, tridiagonal J makes it pentadiagonal.
  std::vector<QCx> h(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      QCx acc{};
      const std::size_t lo = std::max(r, s) >= 1 ? std::max(r, s) - 1 : 0;
      const std::size_t hi = std::min(std::min(r, s) + 1, n - 1);
      for (std::size_t k = lo; k <= hi; ++k) acc = acc + detail::conj(j[k * n + r]) * j[k * n + s];
      h[r * n + s] = acc;
    }

  auto eig = detail::jacobi_hermitian<Quad>(std::move(h), n, Quad(1e-30), 64);
  if (!eig.converged) throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted for J*J");

  Quad radius(0);
  for (const auto& l : eig.values) radius = std::max(radius, abs(l));
  const Quad cluster_gap = Quad(tol.cluster) * radius;
  const Quad zero_s = Quad(tol.rank) * sqrt(radius);

  struct Cluster {
    Quad s2_sum{0};
    std::size_t count = 0;
    Quad weight{0};
    QCx phase_numerator{};
  };
  std::vector<Cluster> clusters;
  Quad last(0);
  for (std::size_t col = 0; col < n; ++col) {
    const Quad lambda = eig.values[col];
    if (clusters.empty() || lambda - last > cluster_gap) clusters.emplace_back();
    last = lambda;
    auto& cl = clusters.back();
    cl.s2_sum += lambda;
    ++cl.count;
    // <delta_0, P delta_0> and <delta_0, J P delta_0> contributions of this eigenvector
    const QCx v0 = eig.vectors[0 * n + col];
    QCx jv0 = j[0] * v0;
    if (n > 1) jv0 = jv0 + j[1] * eig.vectors[1 * n + col];
    cl.weight += detail::norm2(v0);
    cl.phase_numerator = cl.phase_numerator + jv0 * detail::conj(v0);
  }

  DirectMapDiagnostics diag;
  diag.clusters = clusters.size();
  struct QuadAtom {
    Quad s;
    Quad w;
    QCx psi;
  };
  std::vector<QuadAtom> kept;
  Quad kept_mass(0);
  for (const auto& cl : clusters) {
    diag.max_multiplicity = std::max(diag.max_multiplicity, cl.count);
    if (cl.weight < Quad(tol.atom)) {
      ++diag.dropped_atoms;
      diag.dropped_mass += static_cast<double>(cl.weight);
      continue;
    }
    const Quad mean = cl.s2_sum / Quad(cl.count);
    Quad s = mean > Quad(0) ? sqrt(mean) : Quad(0);
    QCx psi{};
    if (s < zero_s || s == Quad(0)) {
      if (s > Quad(0)) ++diag.zeroed_small_s;
      s = Quad(0);
    } else {
      const Quad denom = s * cl.weight;
      psi = {cl.phase_numerator.re / denom, cl.phase_numerator.im / denom};
    }
    if (!kept.empty() && kept.back().s == s) {
      // several clusters collapsed onto s = 0
      kept.back().w += cl.weight;
    } else {
      kept.push_back({s, cl.weight, psi});
    }
    kept_mass += cl.weight;
  }

  std::vector<SpectralAtom> atoms;
  atoms.reserve(kept.size());
  for (const auto& k : kept)
    atoms.push_back({static_cast<double>(k.s), static_cast<double>(k.w / kept_mass), to_complex(k.psi)});
  return {SpectralData(std::move(atoms)), diag};
}

SpectralData direct_map(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol) {
  return direct_map_detailed(c, n, tol).data;
}

Matrix2 weyl_M(const SpectralData& sd, Complex z, const Tolerances& tol) {
  const double pole = tol.pole * (1.0 + std::abs(z));
  Complex m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;
  for (const auto& at : sd.atoms()) {
    const Complex d = at.s * at.s - z;
    if (std::abs(d) < pole) throw Error(ErrorKind::PoleProximity, "z is too close to an atom s^2");
    const Complex g = at.weight / d;
    m00 += g;
    m01 += at.s * at.psi * g;
    m10 += at.s * std::conj(at.psi) * g;
    m11 += at.s * at.s * g;
  }
  return Matrix2(m00, m01, m10, m11);
}

Matrix2 weyl_R_from_M(const SpectralData& sd, Complex zeta, const Tolerances& tol) {
  const Matrix2 m = weyl_M(sd, zeta * zeta, tol);
  const Complex diag = zeta * m(0, 0);
  return Matrix2(diag, m(0, 1), m(1, 0), diag);
}

double diagonal_identity_residual(const SpectralData& sd, Complex zeta, const Tolerances& tol) {
  const Matrix2 m = weyl_M(sd, zeta * zeta, tol);
  const Complex lhs = zeta * m(0, 0);
  const Complex rhs = (-1.0 + m(1, 1)) / zeta;
  const double scale = std::abs(lhs) + (1.0 + std::abs(m(1, 1))) / std::abs(zeta);
  return std::abs(lhs - rhs) / scale;
}

MomentResidual moment_check(const JacobiCoefficients& c, const SpectralData& sd, std::size_t k, std::size_t n) {
  check_dimension(c, n);
  if (n < 2 * k + 2)
    throw Error(ErrorKind::TruncationTooSmall,
                "moment order " + std::to_string(k) + " needs dimension >= " + std::to_string(2 * k + 2));
  const DenseMatrix j = dense_truncation(c, n);
  const DenseMatrix jstar = j.adjoint();

  std::vector<Complex> v(n, 0.0);
  v[0] = 1.0;
  for (std::size_t step = 0; step < k; ++step) v = jstar.apply(j.apply(v));
  const Complex even_op = v[0];
  const Complex odd_op = j.apply(v)[0];

  Complex even_int = 0.0, odd_int = 0.0;
  for (const auto& at : sd.atoms()) {
    const double p = std::pow(at.s, static_cast<double>(2 * k));
    even_int += at.weight * p;
    odd_int += at.weight * p * at.s * at.psi;
  }
  return {std::abs(even_int - even_op), std::abs(odd_int - odd_op)};
}

namespace {

Complex eval_poly(std::span<const Complex> poly, double x) {
  Complex acc = 0.0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
  return acc;
}

DenseMatrix function_of_modulus(const DenseMatrix& gram, std::span<const Complex> poly, const Tolerances& tol) {
  const auto eig = hermitian_eig(gram, tol);
  const std::size_t n = gram.size();
  DenseMatrix out(n);
  for (std::size_t col = 0; col < n; ++col) {
    const Complex f = eval_poly(poly, std::sqrt(std::max(eig.eigenvalues[col], 0.0)));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        out(r, s) += eig.eigenvectors(r, col) * f * std::conj(eig.eigenvectors(s, col));
  }
  return out;
}

}  // namespace

double intertwining_check(const JacobiCoefficients& c, std::size_t n, std::span<const Complex> poly,
                          const Tolerances& tol) {
  check_dimension(c, n);
  std::size_t degree = poly.size();
  while (degree > 0 && poly[degree - 1] == Complex(0.0)) --degree;
  degree = degree == 0 ? 0 : degree - 1;
  if (n <= degree)
    throw Error(ErrorKind::TruncationTooSmall, "dimension must exceed the polynomial degree");

  const DenseMatrix j = dense_truncation(c, n);
  const DenseMatrix jstar = j.adjoint();
  const DenseMatrix lhs = j * function_of_modulus(jstar * j, poly, tol);
  const DenseMatrix rhs = function_of_modulus(j * jstar, poly, tol) * j;
  const DenseMatrix diff = lhs - rhs;

  const std::size_t cols = n - degree;
  DenseMatrix gram(cols);
  for (std::size_t r = 0; r < cols; ++r)
    for (std::size_t s = 0; s < cols; ++s) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(diff(k, r)) * diff(k, s);
      gram(r, s) = acc;
    }
  const auto eig = hermitian_eig(gram, tol);
  return std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
}

std::size_t cyclicity_check(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol) {
  check_dimension(c, n);
  const DenseMatrix j = dense_truncation(c, n);
  const DenseMatrix jstar = j.adjoint();
  const DenseMatrix h = jstar * j;

  // Block Arnoldi with deflation: accepted directions are pushed through J*J
  // again, rejected ones are dropped.
  std::vector<std::vector<Complex>> basis;
  std::deque<std::vector<Complex>> pending;
  std::vector<Complex> e0(n, 0.0);
  e0[0] = 1.0;
  pending.push_back(e0);
  pending.push_back(jstar.apply(e0));

  auto dot = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
    return acc;
  };

  std::size_t applications = 0;
  while (!pending.empty() && basis.size() < n && applications <= 2 * (n + 1)) {
    auto v = std::move(pending.front());
    pending.pop_front();
    double before = std::sqrt(std::real(dot(v, v)));
    if (before == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const Complex p = dot(q, v);
        for (std::size_t k = 0; k < n; ++k) v[k] -= p * q[k];
      }
    const double after = std::sqrt(std::real(dot(v, v)));
    if (after <= tol.rank * before) continue;
    for (auto& x : v) x /= after;
    pending.push_back(h.apply(v));
    ++applications;
    basis.push_back(std::move(v));
  }
  return n - basis.size();
}

}  // namespace wj
