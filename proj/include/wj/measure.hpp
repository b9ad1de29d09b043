#pragma once

// Finitely supported 2x2 matrix measures on the real line and the symmetric
// measure mu built from spectral data (nu, psi).

#include <cstddef>
#include <span>
#include <vector>

#include "wj/direct.hpp"
#include "wj/matops.hpp"
#include "wj/tolerances.hpp"

namespace wj {

struct MatrixAtom {
  double x = 0.0;
  Matrix2 W;
};

class DiscreteMatrixMeasure {
 public:
  DiscreteMatrixMeasure() = default;
  /// Throws Error(InvalidMeasure) unless every W is Hermitian PSD (min
  /// eigenvalue >= -1e-12 trace), abscissae strictly increase, and, when
  /// `normalized`, the total mass is I to 1e-10.
  DiscreteMatrixMeasure(std::vector<MatrixAtom> atoms, bool normalized);

  std::span<const MatrixAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool normalized() const { return normalized_; }

 private:
  std::vector<MatrixAtom> atoms_;
  bool normalized_ = false;
};

/// Atom (s > 0, w, psi) becomes atoms at -s and +s with weights
/// (w/2) [[1, -+psi], [-+conj(psi), 1]]; an atom at s = 0 becomes w I.
DiscreteMatrixMeasure to_matrix_measure(const SpectralData& sd);

/// sum_j x_j^k W_j
Matrix2 moments(const DiscreteMatrixMeasure& m, std::size_t k);

/// sum_j W_j / (x_j - z). Throws Error(PoleProximity) within tol.pole (1 + |z|) of an atom.
Matrix2 stieltjes(const DiscreteMatrixMeasure& m, Complex z, const Tolerances& tol = {});

struct SymmetryReport {
  double even_defect = 0.0;               // diagonal parts vs. their mirror images
  double odd_defect = 0.0;                // off-diagonal parts vs. minus their mirror images
  double diagonal_equality_defect = 0.0;  // max_j |(W_j)_00 - (W_j)_11|
};

/// Mirror atoms are paired when |x + x'| <= 1e-12 (1 + |x|); an unpaired atom
/// contributes its own entries to the defects.
SymmetryReport symmetry_check(const DiscreteMatrixMeasure& m);

struct RankReport {
  bool ok = false;
  double min_eig = 0.0;
};

/// Smallest eigenvalue of the block Hankel Gram matrix [m_{i+j}]_{i,j<=d}
/// against tol.rank times its trace.
RankReport nondegeneracy_rank(const DiscreteMatrixMeasure& m, std::size_t degree, const Tolerances& tol = {});

struct DeterminacyReport {
  bool ok = true;
  double value = 0.0;  // sum_j exp(eps |x_j|) tr W_j
  bool overflow = false;
};

/// Always ok for finite atom sets; the exponential moment is reported, and
/// overflow of it is flagged rather than raised.
DeterminacyReport determinacy_sufficient(const DiscreteMatrixMeasure& m, double eps);

}  // namespace wj
