#include "wj/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail/loglog_fit.hpp"
#include "wj/error.hpp"

namespace wj {

namespace {

// D below this multiple of eps times the size of the scaled Weyl matrix is
// rounding noise of the atom sums.
constexpr double kNoiseFloor = 1e3 * std::numeric_limits<double>::epsilon();

Matrix2 scaled_M(const SpectralData& sd, Complex w, const Matrix2& q, const Tolerances& tol) {
  return q * weyl_M(sd, w, tol) * q;
}

}  // namespace

std::vector<double> default_radii() {
  std::vector<double> r(9);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::pow(10.0, 1.0 + 0.5 * static_cast<double>(i));
  return r;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw Error(ErrorKind::InvalidArgument, "radii must look like r0:r1:count:log|lin");
  double r0 = 0.0, r1 = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    r0 = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("r0");
    r1 = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("r1");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse radii '" + text + "'");
  }
  const bool log_spacing = parts[3] == "log";
  if (!log_spacing && parts[3] != "lin") throw Error(ErrorKind::InvalidArgument, "radii spacing must be log or lin");
  if (!(r0 > 0.0) || !(r1 > r0) || !std::isfinite(r1) || count < 2)
    throw Error(ErrorKind::InvalidArgument, "radii need 0 < r0 < r1 and count >= 2");
  std::vector<double> r(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    r[i] = log_spacing ? r0 * std::pow(r1 / r0, t) : r0 + (r1 - r0) * t;
  }
  return r;
}

double scaled_weyl_difference(const SpectralData& sd1, const SpectralData& sd2, Complex w, const Tolerances& tol) {
  const Matrix2 q = quarter_power_scaling(w);
  return spectral_norm_2x2(scaled_M(sd1, w, q, tol) - scaled_M(sd2, w, q, tol));
}

DecayFit borg_marchenko_fit(const SpectralData& sd1, const SpectralData& sd2, double ray_angle,
                            std::span<const double> radii, const Tolerances& tol) {
  const std::vector<double> defaults = default_radii();
  if (radii.empty()) radii = defaults;
  if (!(ray_angle > 0.0 && ray_angle < 2.0 * std::numbers::pi))
    throw Error(ErrorKind::InvalidArgument, "ray angle must lie in (0, 2 pi)");
  if (radii.size() < 4) throw Error(ErrorKind::InvalidArgument, "need at least 4 radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw Error(ErrorKind::InvalidArgument, "radii must be positive and increasing");
  if (radii.back() / radii.front() < 100.0 * (1.0 - 1e-12))
    throw Error(ErrorKind::InvalidArgument, "radii must span at least two decades");

  DecayFit fit;
  fit.ray_angle = ray_angle;
  std::vector<double> lx, ly;
  for (double r : radii) {
    const Complex w = std::polar(r, ray_angle);
    const Matrix2 q = quarter_power_scaling(w);
    const Matrix2 m1 = scaled_M(sd1, w, q, tol);
    const Matrix2 m2 = scaled_M(sd2, w, q, tol);
    const double d = spectral_norm_2x2(m1 - m2);
    const double scale = std::max(spectral_norm_2x2(m1), spectral_norm_2x2(m2));
    if (!(d > kNoiseFloor * scale)) break;
    fit.radii.push_back(r);
    lx.push_back(std::log(r));
    ly.push_back(std::log(d));
  }
  fit.dropped = radii.size() - fit.radii.size();
  if (lx.size() < 2) {
    fit.degenerate = true;
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.intercept = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const auto line = detail::fit_line(lx, ly);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.max_deviation = line.max_deviation;
  return fit;
}

std::vector<TestFunction> default_test_bank() {
  std::vector<TestFunction> bank;
  for (double c : {0.0, 1.0, 2.0})
    bank.push_back({"lorentz(" + std::to_string(c).substr(0, 3) + ")",
                    [c](double x) { return 1.0 / (1.0 + (x - c) * (x - c)); }});
  for (double c : {0.5, 1.5})
    bank.push_back({"gauss(" + std::to_string(c).substr(0, 3) + ")",
                    [c](double x) { return std::exp(-(x - c) * (x - c)); }});
  return bank;
}

std::vector<ContinuityPoint> continuity_check(std::span<const JacobiCoefficients> sequence,
                                              const JacobiCoefficients& limit, std::span<const TestFunction> bank,
                                              std::size_t n, const Tolerances& tol) {
  struct Integrals {
    std::vector<double> nu;
    std::vector<Complex> psi;
  };
  auto integrate = [&](const SpectralData& sd) {
    Integrals out;
    for (const auto& f : bank) {
      double a = 0.0;
      Complex b = 0.0;
      for (const auto& at : sd.atoms()) {
        const double h = f.h(at.s);
        a += h * at.weight;
        b += h * at.weight * at.psi;
      }
      out.nu.push_back(a);
      out.psi.push_back(b);
    }
    return out;
  };

  const Integrals ref = integrate(direct_map(limit, n, tol));
  const DenseMatrix jref = dense_truncation(limit, n);
  std::vector<ContinuityPoint> series;
  series.reserve(sequence.size());
  for (const auto& c : sequence) {
    const Integrals cur = integrate(direct_map(c, n, tol));
    ContinuityPoint p;
    for (std::size_t i = 0; i < bank.size(); ++i) {
      p.nu_residual += std::abs(cur.nu[i] - ref.nu[i]);
      p.psi_residual += std::abs(cur.psi[i] - ref.psi[i]);
    }
    const DenseMatrix diff = dense_truncation(c, n) - jref;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double col = 0.0;
      for (std::size_t r = 0; r < n; ++r) col += std::norm(diff(r, k));
      p.strong_residual = std::max(p.strong_residual, std::sqrt(col));
    }
    series.push_back(p);
  }
  return series;
}

Classification classify(const SpectralData& sd, double tol) {
  Classification c;
  for (const auto& at : sd.atoms()) {
    if (at.s == 0.0) continue;
    c.max_im_psi = std::max(c.max_im_psi, std::abs(at.psi.imag()));
    c.max_abs_psi = std::max(c.max_abs_psi, std::abs(at.psi));
  }
  c.self_adjoint = c.max_im_psi <= tol;
  c.free_diagonal = c.max_abs_psi <= tol;
  return c;
}

}  // namespace wj
