#include "wj/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wj/error.hpp"

namespace wj {

JacobiCoefficients::JacobiCoefficients(std::vector<double> a, std::vector<Complex> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.empty()) throw Error(ErrorKind::InvalidCoefficients, "b must contain at least one entry");
  if (b_.size() != a_.size() + 1)
    throw Error(ErrorKind::InvalidCoefficients,
                "length mismatch: |b| = " + std::to_string(b_.size()) + ", |a| = " + std::to_string(a_.size()));
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!(a_[k] > 0.0) || !std::isfinite(a_[k]))
      throw Error(ErrorKind::InvalidCoefficients, "a[" + std::to_string(k) + "] must be finite and > 0");
  for (std::size_t k = 0; k < b_.size(); ++k)
    if (!std::isfinite(b_[k].real()) || !std::isfinite(b_[k].imag()))
      throw Error(ErrorKind::InvalidCoefficients, "b[" + std::to_string(k) + "] is not finite");
}

JacobiCoefficients JacobiCoefficients::prefix(std::size_t n) const {
  if (n == 0 || n > size()) throw Error(ErrorKind::DimensionTooLarge, "prefix length out of range");
  return JacobiCoefficients({a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(n - 1)},
                            {b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(n)});
}

JacobiCoefficients JacobiCoefficients::stripped() const {
  if (size() < 2) throw Error(ErrorKind::DimensionTooLarge, "cannot strip a 1x1 operator");
  return JacobiCoefficients({a_.begin() + 1, a_.end()}, {b_.begin() + 1, b_.end()});
}

JacobiCoefficients JacobiCoefficients::conjugated() const {
  std::vector<Complex> bc(b_.size());
  std::transform(b_.begin(), b_.end(), bc.begin(), [](Complex z) { return std::conj(z); });
  return JacobiCoefficients(a_, std::move(bc));
}

void BlockCoefficients::validate(const Tolerances& tol) const {
  if (B.empty()) throw Error(ErrorKind::InvalidArgument, "block coefficients need at least B_0");
  if (B.size() != A.size() + 1) throw Error(ErrorKind::InvalidArgument, "|B| must equal |A| + 1");
  for (const auto& a : A)
    if (std::abs(a.det()) <= tol.rank) throw Error(ErrorKind::InvalidArgument, "A_j is singular");
  for (const auto& b : B)
    if ((b - b.adjoint()).max_abs() > tol.herm * std::max(b.max_abs(), 1e-300))
      throw Error(ErrorKind::InvalidArgument, "B_j is not Hermitian");
}

CanonicalBlockCoefficients::CanonicalBlockCoefficients(BlockCoefficients blocks, const Tolerances& tol)
    : blocks_(std::move(blocks)) {
  blocks_.validate(tol);
  for (const auto& a : blocks_.A) {
    const double s = a.max_abs();
    const bool ok = std::abs(a(0, 0)) <= tol.gauge * s && std::abs(a(1, 1)) <= tol.gauge * s &&
                    std::abs(a(0, 1) - a(1, 0)) <= tol.gauge * s && std::abs(a(0, 1).imag()) <= tol.gauge * s &&
                    a(0, 1).real() > 0.0;
    if (!ok) throw Error(ErrorKind::InvalidArgument, "A_j is not of the form a_j sigma_1");
  }
  for (const auto& b : blocks_.B) {
    const double s = std::max(b.max_abs(), 1e-300);
    if (std::abs(b(0, 0)) > tol.gauge * s || std::abs(b(1, 1)) > tol.gauge * s)
      throw Error(ErrorKind::InvalidArgument, "B_j is not antidiagonal");
  }
}

DenseMatrix dense_truncation(const JacobiCoefficients& c, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "truncation dimension must be >= 1");
  if (n > c.size())
    throw Error(ErrorKind::DimensionTooLarge,
                "truncation " + std::to_string(n) + " exceeds |b| = " + std::to_string(c.size()));
  DenseMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = c.b()[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    m(k, k + 1) = c.a()[k];
    m(k + 1, k) = c.a()[k];
  }
  return m;
}

CanonicalBlockCoefficients block_embed(const JacobiCoefficients& c) {
  BlockCoefficients bc;
  bc.A.reserve(c.a().size());
  bc.B.reserve(c.b().size());
  for (double a : c.a()) bc.A.emplace_back(0.0, a, a, 0.0);
  for (Complex b : c.b()) bc.B.emplace_back(0.0, b, std::conj(b), 0.0);
  return CanonicalBlockCoefficients(std::move(bc));
}

DenseMatrix dense_block_matrix(const BlockCoefficients& bc, std::size_t m) {
  if (m == 0 || m > bc.blocks()) throw Error(ErrorKind::DimensionTooLarge, "block count out of range");
  DenseMatrix d(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t s = 0; s < 2; ++s) {
        d(2 * j + r, 2 * j + s) = bc.B[j](r, s);
        if (j + 1 < m) {
          d(2 * j + r, 2 * (j + 1) + s) = bc.A[j](r, s);
          d(2 * (j + 1) + s, 2 * j + r) = std::conj(bc.A[j](r, s));
        }
      }
  }
  return d;
}

DenseMatrix embedded_operator(const JacobiCoefficients& c, std::size_t n) {
  const DenseMatrix j = dense_truncation(c, n);
  DenseMatrix e(2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      e(r, n + s) = j(r, s);
      e(n + r, s) = std::conj(j(s, r));
    }
  return e;
}

DenseMatrix interleave(const DenseMatrix& direct_sum) {
  const std::size_t dim = direct_sum.size();
  if (dim % 2 != 0) throw Error(ErrorKind::InvalidArgument, "interleave needs an even dimension");
  const std::size_t n = dim / 2;
  // V delta_{2j} = delta_j (+) 0, V delta_{2j+1} = 0 (+) delta_j
  auto image = [n](std::size_t k) { return (k % 2 == 0) ? k / 2 : n + k / 2; };
  DenseMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = 0; s < dim; ++s) out(r, s) = direct_sum(image(r), image(s));
  return out;
}

Complex wronskian(std::span<const Complex> u, std::span<const Complex> v, const JacobiCoefficients& c,
                  std::size_t n) {
  if (n + 1 >= std::min(u.size(), v.size()) || n >= c.a().size())
    throw Error(ErrorKind::IndexOutOfRange, "Wronskian index out of range");
  return c.a()[n] * (u[n + 1] * v[n] - u[n] * v[n + 1]);
}

ProperReport properness_sufficient(const JacobiCoefficients& c, std::optional<double> declared_sup_a) {
  double sup = 0.0;
  for (double a : c.a()) sup = std::max(sup, a);
  if (declared_sup_a) {
    const double d = *declared_sup_a;
    return {std::isfinite(d) && std::isfinite(sup), false};
  }
  return {std::isfinite(sup), true};
}

}  // namespace wj
