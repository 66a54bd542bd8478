#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace matt {

// Stable diagnostic codes; the CLI prints them verbatim.
enum class ErrorCode {
  MalformedTable,
  NotComposable,
  IllTypedCellExpression,
  ModeMismatch,
  NotSharp,
  NotSinister,
  NotTangible,
  NotTransparent,
  KeyTypeMismatch,
  ExpectedPi,
  ExpectedF,
  ExpectedU,
  ConversionFailure,
  UnknownConstant,
  UnknownName,
  CannotInfer,
  DuplicateDeclaration,
  ParseError,
  MalformedDiagram,
  CapExceeded,
  LimitAbsent,
  LimitNotPreserved,
  NotColax,
};

std::string_view to_string(ErrorCode code);

// 1-based source position; line 0 means "no position".
struct Span {
  int line = 0;
  int col = 0;
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, Span span = {})
      : std::runtime_error(std::move(message)), code_(code), span_(span) {}

  ErrorCode code() const noexcept { return code_; }
  Span span() const noexcept { return span_; }
  void set_span_if_missing(Span span) {
    if (span_.line == 0) span_ = span;
  }

  // Extra context lines, innermost first (conversion traces).
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

private:
  ErrorCode code_;
  Span span_;
  std::vector<std::string> notes_;
};

}  // namespace matt
