#pragma once

// Borg-Marchenko decay comparator, weak-convergence (continuity) checker and
// classification of J from its phase function.

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wj/direct.hpp"
#include "wj/jacobi.hpp"
#include "wj/tolerances.hpp"

namespace wj {

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_deviation = 0.0;
  double ray_angle = std::numbers::pi;
  std::vector<double> radii;     // radii actually used by the fit
  std::size_t dropped = 0;       // trailing radii cut off at the rounding floor
  bool degenerate = false;       // fewer than two usable points; slope = -inf
};

/// 10^1 .. 10^5, nine logarithmically spaced radii.
std::vector<double> default_radii();

/// Radii from "r0:r1:count:log" or "r0:r1:count:lin".
std::vector<double> parse_radii(const std::string& text);

/// Least-squares slope of log D(w) against log |w| on w = r e^{i angle}, with
/// D(w) = || w^{s3/4} (M(w) - M~(w)) w^{s3/4} ||. The fit window is the leading
/// run of radii where D stays above 1e3 eps ||w^{s3/4} M w^{s3/4}||.
/// Requires >= 4 increasing radii spanning >= 2 decades and an angle in (0, 2 pi).
DecayFit borg_marchenko_fit(const SpectralData& sd1, const SpectralData& sd2, double ray_angle = std::numbers::pi,
                            std::span<const double> radii = {}, const Tolerances& tol = {});

/// Unscaled difference || w^{s3/4} (M - M~)(w) w^{s3/4} || at one point.
double scaled_weyl_difference(const SpectralData& sd1, const SpectralData& sd2, Complex w, const Tolerances& tol = {});

struct TestFunction {
  std::string name;
  std::function<double(double)> h;
};

/// Fixed bank (version "v1"): 1/(1 + (x - c)^2) for c in {0, 1, 2} and
/// exp(-(x - c)^2) for c in {0.5, 1.5}.
std::vector<TestFunction> default_test_bank();
inline constexpr const char* kTestBankVersion = "v1";

struct ContinuityPoint {
  double nu_residual = 0.0;      // sum_h |int h dnu_N - int h dnu|
  double psi_residual = 0.0;     // sum_h |int h psi_N dnu_N - int h psi dnu|
  double strong_residual = 0.0;  // max_{k < n-1} ||(J_N - J) delta_k||
};

std::vector<ContinuityPoint> continuity_check(std::span<const JacobiCoefficients> sequence,
                                              const JacobiCoefficients& limit, std::span<const TestFunction> bank,
                                              std::size_t n, const Tolerances& tol = {});

struct Classification {
  bool self_adjoint = false;
  bool free_diagonal = false;
  double max_im_psi = 0.0;
  double max_abs_psi = 0.0;
};

Classification classify(const SpectralData& sd, double tol = 1e-10);

}  // namespace wj
