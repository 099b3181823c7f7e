#include "czsim/errors.hpp"

namespace czsim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::basis_mismatch: return "basis_mismatch";
    case ErrorKind::labeling: return "labeling";
    case ErrorKind::composition: return "composition";
    case ErrorKind::numerical_consistency: return "numerical_consistency";
    case ErrorKind::fit: return "fit";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::integration: return "integration";
    case ErrorKind::leakage: return "leakage";
    case ErrorKind::no_coupling: return "no_coupling";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace czsim
