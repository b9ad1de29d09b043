#include "wj/matops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/jacobi_eigen.hpp"
#include "wj/error.hpp"

namespace wj {

namespace {

constexpr int kSweepBudget = 64;
constexpr double kOffDiagonalTarget = 1e-14;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---------------------------------------------------------------- Matrix2

Matrix2::Matrix2(Complex m00, Complex m01, Complex m10, Complex m11) : m_{m00, m01, m10, m11} {
  if (!is_finite()) throw Error(ErrorKind::NonFinite, "Matrix2 entry is not finite");
}

Matrix2 Matrix2::adjoint() const {
  return Matrix2(Unchecked{}, {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])});
}

Complex Matrix2::det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

Complex Matrix2::trace() const { return m_[0] + m_[3]; }

Matrix2 Matrix2::inverse() const {
  const Complex d = det();
  if (d == Complex(0.0)) throw Error(ErrorKind::SingularMatrix, "2x2 block has zero determinant");
  return Matrix2(Unchecked{}, {m_[3] / d, -m_[1] / d, -m_[2] / d, m_[0] / d});
}

double Matrix2::max_abs() const {
  double r = 0.0;
  for (const auto& z : m_) r = std::max(r, std::abs(z));
  return r;
}

bool Matrix2::is_finite() const {
  return std::all_of(m_.begin(), m_.end(), finite);
}

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
  return Matrix2(Matrix2::Unchecked{},
                 {x.m_[0] + y.m_[0], x.m_[1] + y.m_[1], x.m_[2] + y.m_[2], x.m_[3] + y.m_[3]});
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
  return Matrix2(Matrix2::Unchecked{},
                 {x.m_[0] - y.m_[0], x.m_[1] - y.m_[1], x.m_[2] - y.m_[2], x.m_[3] - y.m_[3]});
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return Matrix2(Matrix2::Unchecked{},
                 {x.m_[0] * y.m_[0] + x.m_[1] * y.m_[2], x.m_[0] * y.m_[1] + x.m_[1] * y.m_[3],
                  x.m_[2] * y.m_[0] + x.m_[3] * y.m_[2], x.m_[2] * y.m_[1] + x.m_[3] * y.m_[3]});
}

Matrix2 operator*(Complex s, const Matrix2& x) {
  return Matrix2(Matrix2::Unchecked{}, {s * x.m_[0], s * x.m_[1], s * x.m_[2], s * x.m_[3]});
}

// ------------------------------------------------------------ DenseMatrix

DenseMatrix::DenseMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "DenseMatrix dimension must be >= 1");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from(const Matrix2& m) {
  DenseMatrix d(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) d(i, j) = m(i, j);
  return d;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

std::vector<Complex> DenseMatrix::column(std::size_t j) const {
  std::vector<Complex> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Complex> DenseMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != n_) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
  std::vector<Complex> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n_ != y.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const std::size_t n = x.n_;
  DenseMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n_ != y.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  DenseMatrix r = x;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += y.data_[k];
  return r;
}

DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.n_ != y.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  DenseMatrix r = x;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= y.data_[k];
  return r;
}

DenseMatrix operator*(Complex s, const DenseMatrix& x) {
  DenseMatrix r = x;
  for (auto& z : r.data_) z *= s;
  return r;
}

std::vector<Complex> solve(const DenseMatrix& a, std::span<const Complex> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw Error(ErrorKind::InvalidArgument, "rhs length mismatch");
  DenseMatrix lu = a;
  std::vector<Complex> x(rhs.begin(), rhs.end());
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (std::abs(lu(piv, k)) <= 1e-15 * scale)
      throw Error(ErrorKind::SingularMatrix, "pivot vanishes in LU solve");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(x[k], x[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      if (f == Complex(0.0)) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= lu(k, j) * x[j];
    x[k] = acc / lu(k, k);
  }
  return x;
}

double spectral_norm(const DenseMatrix& a) {
  const auto eig = hermitian_eig(a.adjoint() * a);
  return std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
}

// ------------------------------------------------------------ eigensolver

HermitianEig hermitian_eig(const DenseMatrix& h, const Tolerances& tol) {
  const std::size_t n = h.size();
  const double norm = h.frobenius_norm();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
  if (asym > tol.herm * norm)
    throw Error(ErrorKind::NotHermitian, "max |H_ij - conj(H_ji)| exceeds tolerance");

  std::vector<detail::Cx<double>> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex sym = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a[i * n + j] = {sym.real(), i == j ? 0.0 : sym.imag()};
    }

  auto r = detail::jacobi_hermitian<double>(std::move(a), n, kOffDiagonalTarget, kSweepBudget);
  if (!r.converged) throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted");

  HermitianEig out{std::move(r.values), DenseMatrix(n), r.sweeps};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& z = r.vectors[i * n + j];
      out.eigenvectors(i, j) = Complex(z.re, z.im);
    }
  return out;
}

HermitianEig hermitian_eig(const Matrix2& h, const Tolerances& tol) {
  return hermitian_eig(DenseMatrix::from(h), tol);
}

// -------------------------------------------------------- 2x2 utilities

ScalarPolar polar_scalar_unitary(const Matrix2& c, const Tolerances& tol) {
  const Matrix2 p = c * c.adjoint();
  const double c2 = p(0, 0).real();
  const double scale = std::sqrt(std::max(c2, 0.0));
  if (scale < tol.rank) throw Error(ErrorKind::SingularBlock, "block scale below rank tolerance");
  const double defect = (p - Matrix2::diagonal(c2, c2)).max_abs();
  if (defect > tol.gauge * c2)
    throw Error(ErrorKind::NotScalarPolar, "C C* is not a scalar multiple of the identity");
  return {scale, c / Complex(scale)};
}

double arg_positive(Complex w) {
  double a = std::arg(w);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

Matrix2 quarter_power_scaling(Complex w) {
  const double r = std::abs(w);
  if (!std::isfinite(r)) throw Error(ErrorKind::NonFinite, "w is not finite");
  if (r == 0.0 || (w.real() >= 0.0 && std::abs(w.imag()) <= 1e-14 * r))
    throw Error(ErrorKind::OnCut, "w lies on the cut [0, +inf)");
  const double theta = arg_positive(w) / 4.0;
  const Complex q = std::polar(std::pow(r, 0.25), theta);
  return Matrix2::diagonal(q, 1.0 / q);
}

double spectral_norm_2x2(const Matrix2& a) {
  const Matrix2 g = a.adjoint() * a;
  const double p = g(0, 0).real();
  const double q = g(1, 1).real();
  const double disc = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(g(0, 1)));
  return std::sqrt(std::max(0.5 * (p + q + disc), 0.0));
}

}  // namespace wj
