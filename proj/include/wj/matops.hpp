#pragma once

// Dense complex linear algebra used throughout the library: a fixed 2x2 value
// type, square dense matrices, a cyclic Jacobi Hermitian eigensolver and the
// small closed-form helpers needed by the Weyl-matrix code.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wj/tolerances.hpp"

namespace wj {

using Complex = std::complex<double>;

class Matrix2 {
 public:
  Matrix2() = default;
  /// Throws Error(NonFinite) if any entry is NaN or infinite.
  Matrix2(Complex m00, Complex m01, Complex m10, Complex m11);

  static Matrix2 identity() { return Matrix2(1.0, 0.0, 0.0, 1.0); }
  static Matrix2 sigma1() { return Matrix2(0.0, 1.0, 1.0, 0.0); }
  static Matrix2 diagonal(Complex d0, Complex d1) { return Matrix2(d0, 0.0, 0.0, d1); }

  Complex operator()(std::size_t row, std::size_t col) const { return m_[2 * row + col]; }

  Matrix2 adjoint() const;
  Complex det() const;
  Complex trace() const;
  /// Throws Error(SingularMatrix) when the determinant vanishes.
  Matrix2 inverse() const;
  /// Largest entry modulus.
  double max_abs() const;
  bool is_finite() const;

  friend Matrix2 operator+(const Matrix2& x, const Matrix2& y);
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y);
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
  friend Matrix2 operator*(Complex s, const Matrix2& x);
  friend Matrix2 operator*(const Matrix2& x, Complex s) { return s * x; }
  friend Matrix2 operator/(const Matrix2& x, Complex s) { return (1.0 / s) * x; }
  Matrix2& operator+=(const Matrix2& y) { return *this = *this + y; }
  Matrix2& operator-=(const Matrix2& y) { return *this = *this - y; }

 private:
  struct Unchecked {};
  Matrix2(Unchecked, std::array<Complex, 4> m) : m_(m) {}

  std::array<Complex, 4> m_{};
};

class DenseMatrix {
 public:
  /// Zero n x n matrix; n must be at least 1.
  explicit DenseMatrix(std::size_t n);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from(const Matrix2& m);

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  DenseMatrix adjoint() const;
  double frobenius_norm() const;
  std::vector<Complex> column(std::size_t j) const;
  std::vector<Complex> apply(std::span<const Complex> x) const;

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);
  friend DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y);
  friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y);
  friend DenseMatrix operator*(Complex s, const DenseMatrix& x);

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

/// Solves A x = rhs by LU with partial pivoting. Throws Error(SingularMatrix).
std::vector<Complex> solve(const DenseMatrix& a, std::span<const Complex> rhs);

/// Largest singular value of an arbitrary dense matrix, via the Hermitian
/// eigensolver applied to A*A.
double spectral_norm(const DenseMatrix& a);

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // columns orthonormal
  int sweeps = 0;
};

/// Cyclic two-sided Jacobi eigensolver for Hermitian matrices.
/// Throws NotHermitian if the input is not Hermitian to tol.herm and
/// NoConvergence if 64 sweeps do not bring the off-diagonal mass below
/// 1e-14 of the norm.
HermitianEig hermitian_eig(const DenseMatrix& h, const Tolerances& tol = {});
HermitianEig hermitian_eig(const Matrix2& h, const Tolerances& tol = {});

struct ScalarPolar {
  double scale;  // c >= 0
  Matrix2 unitary;
};

/// Factors C = c U for blocks with C C* = c^2 I.
ScalarPolar polar_scalar_unitary(const Matrix2& c, const Tolerances& tol = {});

/// diag(w^{1/4}, w^{-1/4}) on the branch arg(w^{1/4}) = arg(w)/4 with arg(w) in (0, 2 pi).
/// Throws Error(OnCut) for w on [0, +inf).
Matrix2 quarter_power_scaling(Complex w);

/// Largest singular value in closed form.
double spectral_norm_2x2(const Matrix2& a);

/// arg(w) mapped into [0, 2 pi).
double arg_positive(Complex w);

}  // namespace wj
