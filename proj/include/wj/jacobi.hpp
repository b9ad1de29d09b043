#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wj/matops.hpp"
#include "wj/tolerances.hpp"

namespace wj {

/// Finite prefix of the parameters of J(a, b): off-diagonal a_k > 0 and
/// complex diagonal b_k, stored with |b| = |a| + 1 so that the largest dense
/// truncation is square.
class JacobiCoefficients {
 public:
  /// Throws Error(InvalidCoefficients) on non-positive or non-finite a_k,
  /// non-finite b_k, empty b, or |b| != |a| + 1.
  JacobiCoefficients(std::vector<double> a, std::vector<Complex> b);

  std::span<const double> a() const { return a_; }
  std::span<const Complex> b() const { return b_; }
  /// Largest admissible truncation dimension, |b|.
  std::size_t size() const { return b_.size(); }

  /// Leading n x n section as coefficients (n <= size()).
  JacobiCoefficients prefix(std::size_t n) const;
  /// Coefficients of the once-stripped operator (a_1.., b_1..). Requires size() >= 2.
  JacobiCoefficients stripped() const;
  /// Diagonal conjugated entrywise, the coefficients of J*.
  JacobiCoefficients conjugated() const;

  friend bool operator==(const JacobiCoefficients&, const JacobiCoefficients&) = default;

 private:
  std::vector<double> a_;
  std::vector<Complex> b_;
};

/// Block recurrence coefficients: A_j invertible, B_j Hermitian, |B| = |A| + 1.
struct BlockCoefficients {
  std::vector<Matrix2> A;
  std::vector<Matrix2> B;

  std::size_t blocks() const { return B.size(); }
  /// Throws Error(InvalidArgument) if the invariants fail.
  void validate(const Tolerances& tol = {}) const;
};

/// Block coefficients already in the antidiagonal form
/// A_j = [[0, a_j], [a_j, 0]], B_j = [[0, b_j], [conj b_j, 0]].
class CanonicalBlockCoefficients {
 public:
  explicit CanonicalBlockCoefficients(BlockCoefficients blocks, const Tolerances& tol = {});
  const BlockCoefficients& blocks() const { return blocks_; }

 private:
  BlockCoefficients blocks_;
};

/// Tridiagonal n x n section: diagonal b_0..b_{n-1}, both off-diagonals a_0..a_{n-2}.
DenseMatrix dense_truncation(const JacobiCoefficients& c, std::size_t n);

/// Canonical 2x2 block form of the self-adjoint embedding [[0, J], [J*, 0]].
CanonicalBlockCoefficients block_embed(const JacobiCoefficients& c);

/// Dense 2m x 2m realization of the first m blocks of a block Jacobi matrix.
DenseMatrix dense_block_matrix(const BlockCoefficients& bc, std::size_t m);

/// [[0, J_n], [J_n*, 0]] in the direct-sum ordering (copy one, then copy two).
DenseMatrix embedded_operator(const JacobiCoefficients& c, std::size_t n);

/// Conjugation by the interleaving unitary V (V delta_{2j} = delta_j + 0,
/// V delta_{2j+1} = 0 + delta_j): returns V* M V for M of even size.
DenseMatrix interleave(const DenseMatrix& direct_sum);

/// a_n (u_{n+1} v_n - u_n v_{n+1}).
Complex wronskian(std::span<const Complex> u, std::span<const Complex> v, const JacobiCoefficients& c,
                  std::size_t n);

struct ProperReport {
  bool proper = false;
  /// True when the verdict rests only on the stored prefix of a.
  bool prefix_only = false;
};

/// Sufficient condition for properness: sup a_n < inf. On a finite prefix this
/// is a diagnostic, not a statement about the untruncated operator.
ProperReport properness_sufficient(const JacobiCoefficients& c, std::optional<double> declared_sup_a = {});

}  // namespace wj
