#pragma once

namespace wj {

/// Numerical thresholds shared by all modules. Every value is relative to the
/// natural scale of the quantity it guards (a matrix norm, a trace, |z|).
struct Tolerances {
  double herm = 1e-12;     // Hermiticity check in hermitian_eig
  double eig = 1e-10;      // eigen-reconstruction residual
  double gauge = 1e-8;     // scalar-polar and antidiagonality checks
  double rank = 1e-10;     // numerical rank / termination
  double cluster = 1e-9;   // eigenvalue cluster gap, relative to the spectral radius
  double atom = 1e-24;     // spectral weights below this are dropped
  double pole = 1e-8;      // pole proximity, scaled by (1 + |z|)
};

}  // namespace wj
