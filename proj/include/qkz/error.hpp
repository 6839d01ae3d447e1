#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qkz {

enum class ErrorKind {
  Config,
  DegenerateQ,
  RootOfUnity,
  DivergentBase,
  Divergence,
  Pole,
  TruncationInsufficient,
  ShapeMismatch,
  ZeroOperand,
  DegeneratePoint,
  HwComponentZero,
  SingularOperator,
  UnknownCheck,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qkz
