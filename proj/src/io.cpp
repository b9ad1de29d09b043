#include "wj/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wj/error.hpp"

namespace wj::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::SchemaError, what); }

void check_format(const Json& doc) {
  if (!doc.is_object()) schema("document must be a JSON object");
  if (doc.contains("format") && doc["format"] != std::string(kFormat))
    schema("unsupported format tag, expected \"" + std::string(kFormat) + "\"");
}

double real_from(const Json& j, const std::string& where) {
  if (!j.is_number()) schema(where + " must be a number");
  return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema(where + " must be a [re, im] pair");
  return {real_from(j[0], where + "[0]"), real_from(j[1], where + "[1]")};
}

const Json& member(const Json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) schema(where + ": missing \"" + key + "\"");
  return doc[key];
}

// Invariant violations of the target type are reported as schema errors.
template <class F>
auto validated(F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    schema(e.what());
  }
}

void dump_to(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_to(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_to(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_to(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : number(x).dump();
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
  }
}

JacobiCoefficients coefficients_from_json(const Json& doc) {
  check_format(doc);
  const Json& ja = member(doc, "a", "coefficients");
  const Json& jb = member(doc, "b", "coefficients");
  if (!ja.is_array() || !jb.is_array()) schema("coefficients: \"a\" and \"b\" must be arrays");
  std::vector<double> a;
  std::vector<Complex> b;
  for (std::size_t k = 0; k < ja.size(); ++k) a.push_back(real_from(ja[k], "a[" + std::to_string(k) + "]"));
  for (std::size_t k = 0; k < jb.size(); ++k) b.push_back(complex_from(jb[k], "b[" + std::to_string(k) + "]"));
  return validated([&] { return JacobiCoefficients(std::move(a), std::move(b)); });
}

SpectralData spectral_from_json(const Json& doc) {
  check_format(doc);
  const Json& atoms = member(doc, "atoms", "spectral data");
  if (!atoms.is_array()) schema("spectral data: \"atoms\" must be an array");
  std::vector<SpectralAtom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string where = "atoms[" + std::to_string(k) + "]";
    const Json& at = atoms[k];
    if (!at.is_object()) schema(where + " must be an object");
    out.push_back({real_from(member(at, "s", where), where + ".s"),
                   real_from(member(at, "weight", where), where + ".weight"),
                   complex_from(member(at, "psi", where), where + ".psi")});
  }
  return validated([&] { return SpectralData(std::move(out)); });
}

DiscreteMatrixMeasure measure_from_json(const Json& doc) {
  check_format(doc);
  const Json& atoms = member(doc, "atoms", "measure");
  if (!atoms.is_array()) schema("measure: \"atoms\" must be an array");
  std::vector<MatrixAtom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string where = "atoms[" + std::to_string(k) + "]";
    const Json& at = atoms[k];
    if (!at.is_object()) schema(where + " must be an object");
    const Json& w = member(at, "W", where);
    if (!w.is_array() || w.size() != 2 || !w[0].is_array() || w[0].size() != 2 || !w[1].is_array() ||
        w[1].size() != 2)
      schema(where + ".W must be a 2x2 array of [re, im] pairs");
    const double x = real_from(member(at, "x", where), where + ".x");
    const Complex w00 = complex_from(w[0][0], where + ".W"), w01 = complex_from(w[0][1], where + ".W"),
                  w10 = complex_from(w[1][0], where + ".W"), w11 = complex_from(w[1][1], where + ".W");
    out.push_back({x, validated([&] { return Matrix2(w00, w01, w10, w11); })});
  }
  const bool normalized = doc.contains("normalized") && doc["normalized"].is_boolean() && doc["normalized"].get<bool>();
  return validated([&] { return DiscreteMatrixMeasure(std::move(out), normalized); });
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const Matrix2& m) {
  return Json::array({Json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                      Json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

Json to_json(const JacobiCoefficients& c) {
  Json doc;
  doc["format"] = std::string(kFormat);
  Json a = Json::array();
  for (double x : c.a()) a.push_back(number(x));
  Json b = Json::array();
  for (Complex z : c.b()) b.push_back(to_json(z));
  doc["a"] = std::move(a);
  doc["b"] = std::move(b);
  return doc;
}

Json to_json(const SpectralData& sd) {
  Json doc;
  doc["format"] = std::string(kFormat);
  Json atoms = Json::array();
  for (const auto& at : sd.atoms()) {
    Json j;
    j["s"] = number(at.s);
    j["weight"] = number(at.weight);
    j["psi"] = to_json(at.psi);
    atoms.push_back(std::move(j));
  }
  doc["atoms"] = std::move(atoms);
  return doc;
}

Json to_json(const DiscreteMatrixMeasure& m) {
  Json doc;
  doc["format"] = std::string(kFormat);
  doc["normalized"] = m.normalized();
  Json atoms = Json::array();
  for (const auto& at : m.atoms()) {
    Json j;
    j["x"] = number(at.x);
    j["W"] = to_json(at.W);
    atoms.push_back(std::move(j));
  }
  doc["atoms"] = std::move(atoms);
  return doc;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& doc) {
  std::string out;
  dump_to(out, doc, 0);
  out += "\n";
  return out;
}

std::string csv_record(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  out += "\r\n";
  return out;
}

}  // namespace wj::io
