#include "entropart/error.hpp"

namespace entropart {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_index: return "invalid-index";
    case ErrorKind::shape_mismatch: return "shape-mismatch";
    case ErrorKind::invalid_shape: return "invalid-shape";
    case ErrorKind::degenerate_intersection: return "degenerate-intersection";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::degenerate_sequence: return "degenerate-sequence";
    case ErrorKind::invalid_distribution: return "invalid-distribution";
    case ErrorKind::invalid_axes: return "invalid-axes";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_projection: return "invalid-projection";
    case ErrorKind::invalid_couple: return "invalid-couple";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

}  // namespace entropart
