#include "wj/error.hpp"

namespace wj {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotScalarPolar: return "NotScalarPolar";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::OnCut: return "OnCut";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorKind::InvalidSpectralData: return "InvalidSpectralData";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::SingularWeylValue: return "SingularWeylValue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (kind_) {
    case ErrorKind::DimensionTooLarge:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::InvalidCoefficients:
    case ErrorKind::InvalidSpectralData:
    case ErrorKind::InvalidMeasure:
    case ErrorKind::TruncationTooSmall:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::OnCut:
    case ErrorKind::NonFinite:
      return true;
    default:
      return false;
  }
}

}  // namespace wj
