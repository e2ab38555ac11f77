#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace distl0 {

enum class ErrorKind {
  NotSPD,
  DimensionMismatch,
  InvalidParams,
  TooFewRows,
  MissingNeighborValue,
  CutBudgetExceeded,
  NoCuts,
  TooLarge,
  ShapeMismatch,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSPD: return "NotSPD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::TooFewRows: return "TooFewRows";
    case ErrorKind::MissingNeighborValue: return "MissingNeighborValue";
    case ErrorKind::CutBudgetExceeded: return "CutBudgetExceeded";
    case ErrorKind::NoCuts: return "NoCuts";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind; what() is
/// "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace distl0
