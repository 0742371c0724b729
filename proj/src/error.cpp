#include "thorin/error.hpp"

namespace thorin {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::Divergent: return "DIVERGENT";
    case ErrorCode::UnsupportedFamily: return "UNSUPPORTED_FAMILY";
    case ErrorCode::NotGgc: return "NOT_GGC";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::Underflow: return "UNDERFLOW";
    case ErrorCode::NoConvergence: return "QUADRATURE_FAIL";
    case ErrorCode::InsufficientMass: return "INSUFFICIENT_MASS";
    case ErrorCode::Degenerate: return "DIVISION_DEGENERATE";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

}  // namespace thorin
