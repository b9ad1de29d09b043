#pragma once

// JSON and CSV formats of the command-line tool. Documents carry
// "format": "weyl-jacobi/1"; complex numbers are [re, im] pairs.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wj/direct.hpp"
#include "wj/jacobi.hpp"
#include "wj/measure.hpp"

namespace wj::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormat = "weyl-jacobi/1";

/// Reads a whole file and parses it. Throws Error(ParseError) when the file
/// is missing or is not JSON.
Json read_json_file(const std::string& path);

/// The following throw Error(SchemaError) on a wrong shape, a wrong "format"
/// tag, or values that violate the invariants of the target type.
JacobiCoefficients coefficients_from_json(const Json& doc);
SpectralData spectral_from_json(const Json& doc);
DiscreteMatrixMeasure measure_from_json(const Json& doc);

Json to_json(Complex z);
Json to_json(const Matrix2& m);
Json to_json(const JacobiCoefficients& c);
Json to_json(const SpectralData& sd);
Json to_json(const DiscreteMatrixMeasure& m);

/// A double as JSON: finite values stay numbers, others become "inf",
/// "-inf" or "nan".
Json number(double x);

/// Serializes with two-space indentation, keys in insertion order and every
/// floating-point number printed with %.17g.
std::string dump(const Json& doc);

/// %.17g
std::string format_double(double x);

/// One RFC 4180 record terminated by CRLF; fields containing a comma, quote
/// or line break are quoted.
std::string csv_record(const std::vector<std::string>& fields);

}  // namespace wj::io
