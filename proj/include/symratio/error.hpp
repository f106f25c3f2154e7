#pragma once

#include <stdexcept>
#include <string>

namespace symratio {

enum class ErrorKind {
  invalid_argument,  // precondition on shapes, orders or parameter signs
  dimension_mismatch,
  zero_tensor,
  degenerate_input,  // dependent vectors, continuum of maximizers, ...
  not_differentiable,
  parse_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symratio
