#include "wj/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wj/analysis.hpp"
#include "wj/error.hpp"
#include "wj/inverse.hpp"
#include "wj/io.hpp"

namespace wj::cli {

namespace {

using io::Json;
using io::number;
using io::to_json;

Json tolerances_json(const Tolerances& t) {
  Json j;
  j["herm"] = t.herm;
  j["eig"] = t.eig;
  j["gauge"] = t.gauge;
  j["rank"] = t.rank;
  j["cluster"] = t.cluster;
  j["atom"] = t.atom;
  j["pole"] = t.pole;
  return j;
}

Json report(const std::string& command) {
  Json r;
  r["format"] = std::string(io::kFormat);
  r["command"] = command;
  r["inputs"] = Json::object();
  r["outputs"] = Json::object();
  r["residuals"] = Json::object();
  r["metadata"] = Json::object();
  r["metadata"]["tolerances"] = tolerances_json(Tolerances{});
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

std::size_t dimension_or(std::optional<std::size_t> n, std::size_t fallback) {
  if (n && *n == 0) throw Error(ErrorKind::InvalidArgument, "-n must be >= 1");
  return n.value_or(fallback);
}

double relative_error(double got, double want) {
  const double d = std::abs(got - want);
  return want == 0.0 ? d : d / std::abs(want);
}

double relative_error(Complex got, Complex want) {
  const double d = std::abs(got - want);
  return want == Complex(0.0) ? d : d / std::abs(want);
}

// ---------------------------------------------------------------- direct

struct DirectArgs {
  std::string file;
  std::optional<std::size_t> n;
  std::string out_file;
};

int cmd_direct(const DirectArgs& args, std::ostream& out) {
  const auto c = io::coefficients_from_json(io::read_json_file(args.file));
  const std::size_t n = dimension_or(args.n, c.size());
  const auto res = direct_map_detailed(c, n);

  Json r = report("direct");
  r["inputs"]["file"] = args.file;
  r["inputs"]["n"] = n;
  const Json payload = to_json(res.data);
  r["outputs"]["atoms"] = payload["atoms"];

  double weight_sum = 0.0, max_psi = 0.0;
  for (const auto& at : res.data.atoms()) {
    weight_sum += at.weight;
    max_psi = std::max(max_psi, std::abs(at.psi));
  }
  r["residuals"]["weight_sum_defect"] = number(std::abs(weight_sum - 1.0));
  r["residuals"]["max_abs_psi"] = number(max_psi);
  Json even = Json::array(), odd = Json::array();
  for (std::size_t k = 0; 2 * k + 2 <= n && k <= 5; ++k) {
    const auto m = moment_check(c, res.data, k, n);
    even.push_back(number(m.even));
    odd.push_back(number(m.odd));
  }
  r["residuals"]["moment_even"] = std::move(even);
  r["residuals"]["moment_odd"] = std::move(odd);

  const auto& d = res.diagnostics;
  r["metadata"]["clusters"] = d.clusters;
  r["metadata"]["max_multiplicity"] = d.max_multiplicity;
  r["metadata"]["dropped_atoms"] = d.dropped_atoms;
  r["metadata"]["dropped_mass"] = number(d.dropped_mass);
  r["metadata"]["zeroed_small_s"] = d.zeroed_small_s;

  if (!args.out_file.empty()) {
    Json file = payload;
    file["metadata"] = r["metadata"];
    write_file(args.out_file, io::dump(file));
  }
  out << io::dump(r);
  return kOk;
}

// --------------------------------------------------------------- inverse

struct InverseArgs {
  std::string file;
  std::optional<std::size_t> depth;
  std::string out_file;
};

int cmd_inverse(const InverseArgs& args, std::ostream& out) {
  const auto sd = io::spectral_from_json(io::read_json_file(args.file));
  // Enough blocks for any atom count; the Lanczos rank test decides where to stop.
  const std::size_t depth = dimension_or(args.depth, 2 * sd.size() + 1);
  const auto res = inverse_map_detailed(sd, depth);

  Json r = report("inverse");
  r["inputs"]["file"] = args.file;
  r["inputs"]["depth"] = depth;
  const Json payload = to_json(res.coefficients);
  r["outputs"]["a"] = payload["a"];
  r["outputs"]["b"] = payload["b"];

  double polar = 0.0, anti = 0.0, conj = 0.0;
  for (const auto& s : res.trace.steps) {
    polar = std::max(polar, s.polar_defect);
    anti = std::max(anti, s.antidiagonal_defect);
    conj = std::max(conj, s.conjugacy_defect);
  }
  r["residuals"]["polar_defect"] = number(polar);
  r["residuals"]["antidiagonal_defect"] = number(anti);
  r["residuals"]["conjugacy_defect"] = number(conj);
  const auto lead = leading_from_moments(to_matrix_measure(sd));
  const double a0 = res.coefficients.a().empty() ? 0.0 : res.coefficients.a()[0];
  r["residuals"]["leading_b0"] = number(std::abs(lead.b0 - res.coefficients.b()[0]));
  r["residuals"]["leading_a0"] = number(std::abs(lead.a0 - a0));

  r["metadata"]["lanczos_terminated"] = res.lanczos_terminated;
  r["metadata"]["singular_block"] = res.trace.singular_block;
  r["metadata"]["zero_atom"] = res.zero_atom;

  if (!args.out_file.empty()) {
    Json file = payload;
    file["metadata"] = r["metadata"];
    write_file(args.out_file, io::dump(file));
  }
  out << io::dump(r);
  return kOk;
}

// ------------------------------------------------------------- roundtrip

struct RoundtripArgs {
  std::string file;
  std::optional<std::size_t> n;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  bool corrupt = false;
};

JacobiCoefficients random_coefficients(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-2.0, 2.0);
  std::vector<double> a(n - 1);
  std::vector<Complex> b(n);
  for (auto& x : a) x = ua(rng);
  for (auto& x : b) {
    const double re = ub(rng);
    x = Complex(re, ub(rng));
  }
  return JacobiCoefficients(std::move(a), std::move(b));
}

int cmd_roundtrip(const RoundtripArgs& args, std::ostream& out) {
  std::optional<JacobiCoefficients> c;
  if (!args.file.empty()) c = io::coefficients_from_json(io::read_json_file(args.file));
  const std::size_t n = dimension_or(args.n, c ? c->size() : 12);
  if (!c) c = random_coefficients(n, args.seed);
  if (n > c->size()) throw Error(ErrorKind::DimensionTooLarge, "-n exceeds the number of coefficients");
  const auto want = c->prefix(n);

  SpectralData sd = direct_map(want, n);
  if (args.corrupt) {
    // test hook: rotate one phase so the data describe a different operator
    std::vector<SpectralAtom> atoms(sd.atoms().begin(), sd.atoms().end());
    auto& last = atoms.back();
    if (last.s > 0.0 && last.psi != Complex(0.0))
      last.psi *= std::polar(1.0, 0.1);
    else
      last.psi = last.s > 0.0 ? Complex(0.5, 0.0) : Complex(0.0);
    if (atoms.size() >= 2) std::swap(atoms.front().weight, atoms.back().weight);
    sd = SpectralData(std::move(atoms));
  }
  const auto got = inverse_map(sd, n);

  double err = 0.0;
  if (got.size() != want.size()) {
    err = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t k = 0; k < want.a().size(); ++k) err = std::max(err, relative_error(got.a()[k], want.a()[k]));
    for (std::size_t k = 0; k < want.b().size(); ++k) err = std::max(err, relative_error(got.b()[k], want.b()[k]));
  }
  const bool pass = err <= args.tol;

  Json r = report("roundtrip");
  r["inputs"]["file"] = args.file.empty() ? Json(nullptr) : Json(args.file);
  r["inputs"]["n"] = n;
  r["inputs"]["seed"] = args.file.empty() ? Json(args.seed) : Json(nullptr);
  r["inputs"]["tol"] = number(args.tol);
  r["inputs"]["corrupt"] = args.corrupt;
  r["outputs"]["recovered_size"] = got.size();
  r["residuals"]["max_relative_error"] = number(err);
  r["metadata"]["status"] = pass ? "ok" : "tolerance_failure";
  out << io::dump(r);
  return pass ? kOk : kToleranceFailure;
}

// ------------------------------------------------------------------ weyl

struct WeylArgs {
  std::string file;
  std::vector<std::string> points;
  std::optional<double> ray_angle;
  std::string radii;
  std::string out_file;
};

Complex parse_point(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--z expects re:im, got '" + text + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string re = text.substr(0, colon), im = text.substr(colon + 1);
    const double x = std::stod(re, &u1), y = std::stod(im, &u2);
    if (u1 != re.size() || u2 != im.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "--z expects re:im, got '" + text + "'");
  }
}

int cmd_weyl(const WeylArgs& args, std::ostream& out) {
  const auto sd = io::spectral_from_json(io::read_json_file(args.file));
  std::vector<Complex> grid;
  for (const auto& p : args.points) grid.push_back(parse_point(p));
  if (args.ray_angle || !args.radii.empty()) {
    const double angle = args.ray_angle.value_or(std::numbers::pi);
    const auto radii = args.radii.empty() ? default_radii() : parse_radii(args.radii);
    for (double r : radii) grid.push_back(std::polar(r, angle));
  }
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "no sample points: give --z or --ray-angle/--radii");

  const auto mu = to_matrix_measure(sd);
  std::string csv = io::csv_record({"z_re", "z_im", "status", "M00_re", "M00_im", "M01_re", "M01_im", "M10_re",
                                    "M10_im", "M11_re", "M11_im", "R00_re", "R00_im", "R01_re", "R01_im", "R10_re",
                                    "R10_im", "R11_re", "R11_im", "diag_identity_residual", "rm_residual"});
  for (const Complex z : grid) {
    std::vector<std::string> row{io::format_double(z.real()), io::format_double(z.imag())};
    const bool on_cut = z.imag() == 0.0 && z.real() >= 0.0;
    std::optional<Matrix2> m, rr;
    double diag = 0.0, rm = 0.0;
    if (!on_cut) {
      try {
        // zeta = sqrt(z) on the branch Im zeta > 0
        const Complex zeta = Complex(0.0, 1.0) * std::sqrt(-z);
        m = weyl_M(sd, z);
        rr = weyl_R(mu, zeta);
        diag = diagonal_identity_residual(sd, zeta);
        rm = spectral_norm_2x2(*rr - weyl_R_from_M(sd, zeta)) / std::max(spectral_norm_2x2(*rr), 1e-300);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PoleProximity) throw;
        m.reset();
      }
    }
    row.push_back(on_cut ? "cut" : (m ? "ok" : "pole"));
    for (const auto* mat : {m ? &*m : nullptr, m ? &*rr : nullptr})
      for (std::size_t i = 0; i < 4; ++i) {
        if (!mat) {
          row.insert(row.end(), {"NA", "NA"});
          continue;
        }
        const Complex v = (*mat)(i / 2, i % 2);
        row.push_back(io::format_double(v.real()));
        row.push_back(io::format_double(v.imag()));
      }
    row.push_back(m ? io::format_double(diag) : "NA");
    row.push_back(m ? io::format_double(rm) : "NA");
    csv += io::csv_record(row);
  }
  if (!args.out_file.empty()) write_file(args.out_file, csv);
  out << csv;
  return kOk;
}

// -------------------------------------------------------- borg-marchenko

struct BorgArgs {
  std::string file1, file2;
  std::optional<std::size_t> n;
  double ray_angle = std::numbers::pi;
  std::string radii;
};

Json first_difference(const JacobiCoefficients& x, const JacobiCoefficients& y) {
  const std::size_t len = std::min(x.size(), y.size());
  for (std::size_t k = 0; k < len; ++k) {
    if (x.b()[k] != y.b()[k]) return Json{{"coefficient", "b"}, {"index", k}};
    if (k + 1 < len && x.a()[k] != y.a()[k]) return Json{{"coefficient", "a"}, {"index", k}};
  }
  return nullptr;
}

int cmd_borg_marchenko(const BorgArgs& args, std::ostream& out) {
  const auto c1 = io::coefficients_from_json(io::read_json_file(args.file1));
  const auto c2 = io::coefficients_from_json(io::read_json_file(args.file2));
  const std::size_t n1 = dimension_or(args.n, c1.size());
  const std::size_t n2 = dimension_or(args.n, c2.size());
  const auto radii = args.radii.empty() ? default_radii() : parse_radii(args.radii);
  const auto fit = borg_marchenko_fit(direct_map(c1, n1), direct_map(c2, n2), args.ray_angle, radii);

  Json r = report("borg-marchenko");
  r["inputs"]["file1"] = args.file1;
  r["inputs"]["file2"] = args.file2;
  r["inputs"]["n1"] = n1;
  r["inputs"]["n2"] = n2;
  r["inputs"]["ray_angle"] = number(args.ray_angle);
  Json all = Json::array();
  for (double x : radii) all.push_back(number(x));
  r["inputs"]["radii"] = std::move(all);
  r["outputs"]["slope"] = number(fit.slope);
  r["outputs"]["intercept"] = number(fit.intercept);
  r["outputs"]["max_deviation"] = number(fit.max_deviation);
  Json used = Json::array();
  for (double x : fit.radii) used.push_back(number(x));
  r["outputs"]["radii_used"] = std::move(used);
  r["outputs"]["first_difference"] = first_difference(c1.prefix(n1), c2.prefix(n2));
  r["metadata"]["degenerate"] = fit.degenerate;
  r["metadata"]["dropped_radii"] = fit.dropped;
  out << io::dump(r);
  return kOk;
}

// -------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string file;
  double tol = 1e-10;
};

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
  const auto sd = io::spectral_from_json(io::read_json_file(args.file));
  const auto c = classify(sd, args.tol);
  Json r = report("classify");
  r["inputs"]["file"] = args.file;
  r["inputs"]["tol"] = number(args.tol);
  r["outputs"]["self_adjoint"] = c.self_adjoint;
  r["outputs"]["free_diagonal"] = c.free_diagonal;
  r["outputs"]["max_im_psi"] = number(c.max_im_psi);
  r["outputs"]["max_abs_psi"] = number(c.max_abs_psi);
  out << io::dump(r);
  return kOk;
}

// ------------------------------------------------------------ continuity

struct ContinuityArgs {
  std::string file;
};

int cmd_continuity(const ContinuityArgs& args, std::ostream& out) {
  const Json doc = io::read_json_file(args.file);
  auto schema = [](const std::string& what) { return Error(ErrorKind::SchemaError, "manifest: " + what); };
  if (!doc.is_object()) throw schema("must be a JSON object");
  if (doc.contains("format") && doc["format"] != std::string(io::kFormat)) throw schema("unsupported format tag");
  if (!doc.contains("limit")) throw schema("missing \"limit\"");
  const auto limit = io::coefficients_from_json(doc["limit"]);
  std::size_t n = limit.size();
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0) throw schema("\"n\" must be >= 1");
    n = doc["n"].get<std::size_t>();
  }

  std::vector<JacobiCoefficients> seq;
  Json labels = Json::array();
  if (doc.contains("sequence")) {
    if (!doc["sequence"].is_array()) throw schema("\"sequence\" must be an array");
    for (std::size_t i = 0; i < doc["sequence"].size(); ++i) {
      seq.push_back(io::coefficients_from_json(doc["sequence"][i]));
      labels.push_back(i);
    }
  } else if (doc.contains("perturbation")) {
    const Json& p = doc["perturbation"];
    if (!p.is_object() || !p.contains("index") || !p["index"].is_number_unsigned() || !p.contains("N") ||
        !p["N"].is_array())
      throw schema("\"perturbation\" needs an unsigned \"index\" and an array \"N\"");
    const std::size_t index = p["index"].get<std::size_t>();
    if (index >= limit.size()) throw schema("perturbation index out of range");
    for (const auto& jn : p["N"]) {
      if (!jn.is_number() || !(jn.get<double>() > 0.0)) throw schema("entries of \"N\" must be positive");
      const double big_n = jn.get<double>();
      std::vector<Complex> b(limit.b().begin(), limit.b().end());
      b[index] += 1.0 / big_n;
      seq.emplace_back(std::vector<double>(limit.a().begin(), limit.a().end()), std::move(b));
      labels.push_back(number(big_n));
    }
  } else {
    throw schema("needs \"sequence\" or \"perturbation\"");
  }

  const auto bank = default_test_bank();
  const auto series = continuity_check(seq, limit, bank, n);

  Json r = report("continuity");
  r["inputs"]["file"] = args.file;
  r["inputs"]["n"] = n;
  Json rows = Json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    Json row;
    row["label"] = labels[i];
    row["nu_residual"] = number(series[i].nu_residual);
    row["psi_residual"] = number(series[i].psi_residual);
    row["strong_residual"] = number(series[i].strong_residual);
    rows.push_back(std::move(row));
  }
  r["outputs"]["series"] = std::move(rows);
  r["metadata"]["test_bank"] = kTestBankVersion;
  Json names = Json::array();
  for (const auto& f : bank) names.push_back(f.name);
  r["metadata"]["test_functions"] = std::move(names);
  out << io::dump(r);
  return kOk;
}

// --------------------------------------------------------------- measure

struct MeasureArgs {
  std::string file;
  std::string out_file;
};

int cmd_measure(const MeasureArgs& args, std::ostream& out) {
  const auto sd = io::spectral_from_json(io::read_json_file(args.file));
  const auto mu = to_matrix_measure(sd);
  const auto sym = symmetry_check(mu);
  Json r = report("measure");
  r["inputs"]["file"] = args.file;
  r["outputs"]["atoms"] = to_json(mu)["atoms"];
  r["residuals"]["even_defect"] = number(sym.even_defect);
  r["residuals"]["odd_defect"] = number(sym.odd_defect);
  r["residuals"]["diagonal_equality_defect"] = number(sym.diagonal_equality_defect);
  if (!args.out_file.empty()) write_file(args.out_file, io::dump(to_json(mu)));
  out << io::dump(r);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Direct and inverse spectral transforms of non-self-adjoint Jacobi matrices", "wj"};
  app.require_subcommand(1);

  DirectArgs direct;
  auto* sc_direct = app.add_subcommand("direct", "spectral data (nu, psi) of a coefficient file");
  sc_direct->add_option("coefficients", direct.file, "coefficient JSON")->required();
  sc_direct->add_option("-n", direct.n, "truncation dimension (default |b|)");
  sc_direct->add_option("--out", direct.out_file, "write the spectral JSON here");

  InverseArgs inverse;
  auto* sc_inverse = app.add_subcommand("inverse", "coefficients from a spectral data file");
  sc_inverse->add_option("spectral", inverse.file, "spectral JSON")->required();
  sc_inverse->add_option("--depth", inverse.depth, "maximal number of diagonal coefficients");
  sc_inverse->add_option("--out", inverse.out_file, "write the coefficient JSON here");

  RoundtripArgs roundtrip;
  auto* sc_round = app.add_subcommand("roundtrip", "direct then inverse map, compared with the input");
  sc_round->add_option("coefficients", roundtrip.file, "coefficient JSON (random when omitted)");
  sc_round->add_option("-n", roundtrip.n, "truncation dimension");
  sc_round->add_option("--seed", roundtrip.seed, "seed for random coefficients");
  sc_round->add_option("--tol", roundtrip.tol, "relative error bound for exit code 0");
  sc_round->add_flag("--corrupt", roundtrip.corrupt, "perturb the spectral data before inverting");

  WeylArgs weyl;
  auto* sc_weyl = app.add_subcommand("weyl", "CSV of M(z), R(sqrt z) and identity residuals");
  sc_weyl->add_option("spectral", weyl.file, "spectral JSON")->required();
  sc_weyl->add_option("--z", weyl.points, "sample point re:im (repeatable)");
  sc_weyl->add_option("--ray-angle", weyl.ray_angle, "ray arg z for a radial grid");
  sc_weyl->add_option("--radii", weyl.radii, "r0:r1:count:log|lin");
  sc_weyl->add_option("--out", weyl.out_file, "write the CSV here");

  BorgArgs borg;
  auto* sc_borg = app.add_subcommand("borg-marchenko", "decay exponent of the scaled Weyl difference");
  sc_borg->add_option("coefficients1", borg.file1)->required();
  sc_borg->add_option("coefficients2", borg.file2)->required();
  sc_borg->add_option("-n", borg.n, "truncation dimension for both");
  sc_borg->add_option("--ray-angle", borg.ray_angle, "arg w of the ray");
  sc_borg->add_option("--radii", borg.radii, "r0:r1:count:log|lin");

  ClassifyArgs cls;
  auto* sc_classify = app.add_subcommand("classify", "self-adjointness and free-diagonal tests from psi");
  sc_classify->add_option("spectral", cls.file, "spectral JSON")->required();
  sc_classify->add_option("--tol", cls.tol, "threshold on |Im psi| and |psi|");

  ContinuityArgs cont;
  auto* sc_cont = app.add_subcommand("continuity", "weak-convergence residuals for a coefficient sequence");
  sc_cont->add_option("manifest", cont.file, "manifest JSON")->required();

  MeasureArgs meas;
  auto* sc_measure = app.add_subcommand("measure", "symmetric matrix measure of a spectral data file");
  sc_measure->add_option("spectral", meas.file, "spectral JSON")->required();
  sc_measure->add_option("--out", meas.out_file, "write the measure JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*sc_direct) return cmd_direct(direct, out);
    if (*sc_inverse) return cmd_inverse(inverse, out);
    if (*sc_round) return cmd_roundtrip(roundtrip, out);
    if (*sc_weyl) return cmd_weyl(weyl, out);
    if (*sc_borg) return cmd_borg_marchenko(borg, out);
    if (*sc_classify) return cmd_classify(cls, out);
    if (*sc_cont) return cmd_continuity(cont, out);
    if (*sc_measure) return cmd_measure(meas, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_input_error() ? kInputError : kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  }
  return kInputError;
}

}  // namespace wj::cli
