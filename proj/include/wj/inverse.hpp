#pragma once

// Inverse spectral map: block Lanczos on a symmetric matrix measure, gauge
// fixing of the recurrence blocks to the antidiagonal form, and the Weyl
// matrix tools used to verify it (leading coefficients, stripping, Laurent
// expansion).

#include <cstddef>
#include <span>
#include <vector>

#include "wj/jacobi.hpp"
#include "wj/measure.hpp"
#include "wj/tolerances.hpp"

namespace wj {

struct LanczosResult {
  BlockCoefficients blocks;
  /// True when the residual Gram lost rank, i.e. the measure supports no
  /// further block beyond the ones returned.
  bool terminated = false;
  /// Smallest residual Gram eigenvalue at the step that ended the run (0 if
  /// the depth limit was hit first).
  double terminal_min_eig = 0.0;
};

/// Orthonormal right matrix polynomials for m (normalized) up to `depth`
/// blocks B_0..B_{depth-1}; A_n is the Hermitian square root of the residual
/// Gram. Stops early when that Gram has min eigenvalue below
/// tol.rank * max(1, max|x|)^2.
LanczosResult block_lanczos(const DiscreteMatrixMeasure& m, std::size_t depth, const Tolerances& tol = {});

struct GaugeStep {
  double polar_defect = 0.0;         // ||C C* - a^2 I|| / a^2
  double antidiagonal_defect = 0.0;  // |(W* B W)_00| + |(W* B W)_11|
  double conjugacy_defect = 0.0;     // |(W* B W)_10 - conj(b)|
};

struct GaugeTrace {
  std::vector<Matrix2> W;        // W_0 = I
  std::vector<GaugeStep> steps;  // one per B_n
  /// Set when a block became singular and the coefficients were cut short.
  bool singular_block = false;
};

struct GaugeResult {
  JacobiCoefficients coefficients;
  GaugeTrace trace;
};

/// Chooses block-diagonal unitaries W_n with W_n* A_n W_{n+1} = a_n sigma_1
/// and reads b_n = (W_n* B_n W_n)_01. Throws NotScalarPolar when an A block
/// cannot be brought to that form.
GaugeResult gauge_fix(const BlockCoefficients& bc, const Tolerances& tol = {});

struct InverseResult {
  JacobiCoefficients coefficients;
  GaugeTrace trace;
  bool lanczos_terminated = false;
  bool zero_atom = false;  // nu has an atom at s = 0
};

InverseResult inverse_map_detailed(const SpectralData& sd, std::size_t depth, const Tolerances& tol = {});
JacobiCoefficients inverse_map(const SpectralData& sd, std::size_t depth, const Tolerances& tol = {});

struct Leading {
  Complex b0;
  double a0 = 0.0;
};

/// b0 = (m_1)_01, a0 = sqrt((m_2)_00 - |b0|^2). Throws InvalidMeasure when the
/// radicand is below -1e-10; small negative radicands are clamped to 0.
Leading leading_from_moments(const DiscreteMatrixMeasure& m);

/// Block Weyl matrix of a measure, the Stieltjes transform of m.
Matrix2 weyl_R(const DiscreteMatrixMeasure& m, Complex z, const Tolerances& tol = {});

/// Top-left 2x2 block of (J - z)^{-1} for the dense realization of the first
/// `blocks` blocks.
Matrix2 weyl_R_dense(const BlockCoefficients& bc, std::size_t blocks, Complex z);

/// Weyl matrix of the once-stripped operator:
/// -(1/a0^2) [[d R_00 + z, -d R_10 - conj(b0)], [-d R_01 - b0, d R_11 + z]], d = 1/det R.
/// Throws SingularWeylValue when |det R| <= tol.pole.
Matrix2 strip_weyl(const Matrix2& r, Complex z, Complex b0, double a0, const Tolerances& tol = {});

struct ExpansionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_deviation = 0.0;
  std::size_t points = 0;
  /// Radii span less than two decades (or fewer than 4 points survive).
  bool wide_confidence = false;
};

/// Fits log ||E(z)|| against log |z| on the ray arg z = angle, where
/// E = R + I/z + B_0/z^2 + (A_0 A_0* + B_0^2)/z^3 with B_0 = [[0, b0], [conj b0, 0]]
/// and A_0 A_0* = a0^2 I. Points whose E is lost in rounding are dropped.
ExpansionFit expansion_check(const DiscreteMatrixMeasure& m, Complex b0, double a0, std::span<const double> radii,
                             double angle = 1.5707963267948966, const Tolerances& tol = {});

}  // namespace wj
