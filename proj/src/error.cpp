#include "gkit/error.hpp"

namespace gkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotAPthPower: return "NotAPthPower";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotInCohen: return "NotInCohen";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NotEisenstein: return "NotEisenstein";
    case ErrorCode::UnsupportedAlgebra: return "UnsupportedAlgebra";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::LevelTooLow: return "LevelTooLow";
    case ErrorCode::NotInTargetFiltration: return "NotInTargetFiltration";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "InternalError";
}

}  // namespace gkit
