#include "wj/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wj/error.hpp"

namespace wj {

namespace {

constexpr double kPsdTol = 1e-12;
constexpr double kMassTol = 1e-10;
constexpr double kMirrorTol = 1e-12;

double min_eig_2x2(const Matrix2& w) {
  const double p = w(0, 0).real();
  const double q = w(1, 1).real();
  const double disc = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(w(0, 1)));
  return 0.5 * (p + q - disc);
}

}  // namespace

DiscreteMatrixMeasure::DiscreteMatrixMeasure(std::vector<MatrixAtom> atoms, bool normalized)
    : atoms_(std::move(atoms)), normalized_(normalized) {
  Matrix2 total = Matrix2::diagonal(0.0, 0.0);
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const auto& a = atoms_[j];
    const std::string where = "atom " + std::to_string(j);
    if (!std::isfinite(a.x)) throw Error(ErrorKind::InvalidMeasure, where + ": x is not finite");
    if (j > 0 && !(a.x > atoms_[j - 1].x))
      throw Error(ErrorKind::InvalidMeasure, where + ": abscissae must be strictly increasing");
    const double tr = a.W.trace().real();
    if ((a.W - a.W.adjoint()).max_abs() > kPsdTol * std::max(a.W.max_abs(), 1e-300))
      throw Error(ErrorKind::InvalidMeasure, where + ": weight is not Hermitian");
    if (min_eig_2x2(a.W) < -kPsdTol * std::abs(tr))
      throw Error(ErrorKind::InvalidMeasure, where + ": weight is not positive semidefinite");
    total += a.W;
  }
  if (normalized_ && (total - Matrix2::identity()).max_abs() > kMassTol)
    throw Error(ErrorKind::InvalidMeasure, "total mass differs from the identity");
}

DiscreteMatrixMeasure to_matrix_measure(const SpectralData& sd) {
  const auto atoms = sd.atoms();
  std::vector<MatrixAtom> out;
  out.reserve(2 * atoms.size());
  for (std::size_t k = atoms.size(); k-- > 0;) {
    const auto& a = atoms[k];
    if (a.s == 0.0) continue;
    const double h = 0.5 * a.weight;
    out.push_back({-a.s, Matrix2(h, -h * a.psi, -h * std::conj(a.psi), h)});
  }
  for (const auto& a : atoms) {
    if (a.s == 0.0) {
      out.push_back({0.0, Matrix2::diagonal(a.weight, a.weight)});
      continue;
    }
    const double h = 0.5 * a.weight;
    out.push_back({a.s, Matrix2(h, h * a.psi, h * std::conj(a.psi), h)});
  }
  return DiscreteMatrixMeasure(std::move(out), true);
}

Matrix2 moments(const DiscreteMatrixMeasure& m, std::size_t k) {
  Matrix2 acc = Matrix2::diagonal(0.0, 0.0);
  for (const auto& a : m.atoms()) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= a.x;
    acc += p * a.W;
  }
  return acc;
}

Matrix2 stieltjes(const DiscreteMatrixMeasure& m, Complex z, const Tolerances& tol) {
  const double pole = tol.pole * (1.0 + std::abs(z));
  Matrix2 acc = Matrix2::diagonal(0.0, 0.0);
  for (const auto& a : m.atoms()) {
    const Complex d = a.x - z;
    if (std::abs(d) < pole) throw Error(ErrorKind::PoleProximity, "z is too close to an atom");
    acc += a.W / d;
  }
  return acc;
}

SymmetryReport symmetry_check(const DiscreteMatrixMeasure& m) {
  SymmetryReport r;
  const auto atoms = m.atoms();
  for (const auto& a : atoms) {
    r.diagonal_equality_defect = std::max(r.diagonal_equality_defect, std::abs(a.W(0, 0) - a.W(1, 1)));
    const auto mirror = std::find_if(atoms.begin(), atoms.end(), [&](const MatrixAtom& b) {
      return std::abs(a.x + b.x) <= kMirrorTol * (1.0 + std::abs(a.x));
    });
    if (mirror == atoms.end()) {
      r.even_defect = std::max({r.even_defect, std::abs(a.W(0, 0)), std::abs(a.W(1, 1))});
      r.odd_defect = std::max({r.odd_defect, std::abs(a.W(0, 1)), std::abs(a.W(1, 0))});
      continue;
    }
    const Matrix2& w = mirror->W;
    r.even_defect = std::max({r.even_defect, std::abs(a.W(0, 0) - w(0, 0)), std::abs(a.W(1, 1) - w(1, 1))});
    r.odd_defect = std::max({r.odd_defect, std::abs(a.W(0, 1) + w(0, 1)), std::abs(a.W(1, 0) + w(1, 0))});
  }
  return r;
}

RankReport nondegeneracy_rank(const DiscreteMatrixMeasure& m, std::size_t degree, const Tolerances& tol) {
  const std::size_t blocks = degree + 1;
  std::vector<Matrix2> mom(2 * blocks - 1);
  for (std::size_t k = 0; k < mom.size(); ++k) mom[k] = moments(m, k);
  DenseMatrix gram(2 * blocks);
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t j = 0; j < blocks; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s) gram(2 * i + r, 2 * j + s) = mom[i + j](r, s);
  double trace = 0.0;
  for (std::size_t k = 0; k < 2 * blocks; ++k) trace += gram(k, k).real();
  const auto eig = hermitian_eig(gram, tol);
  const double min_eig = eig.eigenvalues.front();
  return {min_eig > tol.rank * trace, min_eig};
}

DeterminacyReport determinacy_sufficient(const DiscreteMatrixMeasure& m, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  DeterminacyReport r;
  for (const auto& a : m.atoms()) r.value += std::exp(eps * std::abs(a.x)) * a.W.trace().real();
  r.overflow = !std::isfinite(r.value);
  return r;
}

}  // namespace wj
