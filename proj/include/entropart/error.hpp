#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entropart {

enum class ErrorKind {
  invalid_index,
  shape_mismatch,
  invalid_shape,
  degenerate_intersection,
  too_large,
  degenerate_sequence,
  invalid_distribution,
  invalid_axes,
  invalid_argument,
  invalid_projection,
  invalid_couple,
  parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

inline std::ostream& operator<<(std::ostream& os, ErrorKind kind) {
  return os << to_string(kind);
}

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entropart
