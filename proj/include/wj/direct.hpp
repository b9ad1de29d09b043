#pragma once

// Direct spectral map J -> (nu, psi) on finite truncations, the Weyl matrix
// M(z) built from that data, and finite-scale diagnostics (moments,
// intertwining, cyclicity).

#include <cstddef>
#include <span>
#include <vector>

#include "wj/jacobi.hpp"
#include "wj/matops.hpp"
#include "wj/tolerances.hpp"

namespace wj {

struct SpectralAtom {
  double s = 0.0;       // point of the spectrum of |J|
  double weight = 0.0;  // nu({s})
  Complex psi = 0.0;    // phase, |psi| <= 1, psi = 0 at s = 0

  friend bool operator==(const SpectralAtom&, const SpectralAtom&) = default;
};

/// Finitely supported spectral data (nu, psi): a probability measure on
/// [0, inf) together with the phase function on its atoms.
class SpectralData {
 public:
  SpectralData() = default;
  /// Throws Error(InvalidSpectralData) unless: weights positive and summing to
  /// 1 within 1e-10, |psi| <= 1 + 1e-10, psi == 0 at s == 0, s strictly
  /// increasing and non-negative.
  explicit SpectralData(std::vector<SpectralAtom> atoms);

  std::span<const SpectralAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<SpectralAtom> atoms_;
};

struct DirectMapDiagnostics {
  std::size_t clusters = 0;          // eigenvalue clusters of J*J
  std::size_t dropped_atoms = 0;     // clusters with weight below tol.atom
  double dropped_mass = 0.0;
  std::size_t zeroed_small_s = 0;    // clusters with 0 < s < tol.rank * ||J|| mapped to s = 0
  std::size_t max_multiplicity = 0;  // largest cluster size
};

struct DirectMapResult {
  SpectralData data;
  DirectMapDiagnostics diagnostics;
};

/// Spectral data of the n x n truncation via the spectral theorem for J*J.
/// The eigendecomposition runs in binary128 so that small weights and phases
/// carry full relative double precision.
DirectMapResult direct_map_detailed(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol = {});
SpectralData direct_map(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol = {});

/// M_00 = int dnu/(x^2 - z), M_01 = int x psi dnu/(x^2 - z),
/// M_10 = int x conj(psi) dnu/(x^2 - z), M_11 = int x^2 dnu/(x^2 - z).
/// Throws Error(PoleProximity) if |x^2 - z| < tol.pole (1 + |z|) at an atom.
Matrix2 weyl_M(const SpectralData& sd, Complex z, const Tolerances& tol = {});

/// The block Weyl matrix assembled from M: [[zeta M_00(zeta^2), M_01(zeta^2)],
/// [M_10(zeta^2), zeta M_00(zeta^2)]].
Matrix2 weyl_R_from_M(const SpectralData& sd, Complex zeta, const Tolerances& tol = {});

/// |zeta M_00(zeta^2) - (-1 + M_11(zeta^2)) / zeta| relative to the size of the terms.
double diagonal_identity_residual(const SpectralData& sd, Complex zeta, const Tolerances& tol = {});

struct MomentResidual {
  double even = 0.0;  // |int x^{2k} dnu - ((J*J)^k)_00|
  double odd = 0.0;   // |int x^{2k+1} psi dnu - (J (J*J)^k)_00|
};

/// Compares moments of (nu, psi) against matrix elements of the n x n
/// truncation. Throws TruncationTooSmall when n < 2k + 2.
MomentResidual moment_check(const JacobiCoefficients& c, const SpectralData& sd, std::size_t k, std::size_t n);

/// || J f(|J|) - f(|J*|) J || restricted to the first n - deg(f) columns, with
/// f a polynomial given by its coefficients (constant term first).
double intertwining_check(const JacobiCoefficients& c, std::size_t n, std::span<const Complex> poly,
                          const Tolerances& tol = {});

/// n minus the numerical rank of span{(J*J)^k delta_0, (J*J)^k J* delta_0 : k <= n}.
std::size_t cyclicity_check(const JacobiCoefficients& c, std::size_t n, const Tolerances& tol = {});

}  // namespace wj
