#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvebound {

enum class Errc {
  EmptyGraph,
  VertexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  Disconnected,
  ParameterOutOfRange,
  ParseError,
  EmptySource,
  MassMismatch,
  SameVertex,
  PowerTooLarge,
  EmptySigma,
  NonSeparating,
  NoPositiveRange,
  TooLarge,
  UnknownFamily,
  TooLargeForDense,
  EmptyRange,
  EmptySide,
  CountTooLarge,
  IndexOutOfRange,
  AlphaTooLarge,
  DominanceHypothesisFails,
};

std::string_view errc_name(Errc code);

/// Library error carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace curvebound
