#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bcr {

enum class ErrorCode {
  // graph validation
  WhiteWithSolidEdge,
  WhiteValencyBelowThree,
  BlackWithoutDashed,
  ForbiddenSelfLoop,
  BadLabelOrdering,
  DanglingVertexLabel,
  // relabeling / contraction
  PermutationMixesColors,
  SelfLoopContraction,
  // complex
  UnsupportedRange,
  InternalCoverage,
  // chord diagrams
  BadVertexCount,
  VertexReused,
  AxisAxisChord,
  AxisNotFirst,
  OrderMismatch,
  // files
  ParseFailure,
  IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WhiteWithSolidEdge: return "WhiteWithSolidEdge";
    case ErrorCode::WhiteValencyBelowThree: return "WhiteValencyBelowThree";
    case ErrorCode::BlackWithoutDashed: return "BlackWithoutDashed";
    case ErrorCode::ForbiddenSelfLoop: return "ForbiddenSelfLoop";
    case ErrorCode::BadLabelOrdering: return "BadLabelOrdering";
    case ErrorCode::DanglingVertexLabel: return "DanglingVertexLabel";
    case ErrorCode::PermutationMixesColors: return "PermutationMixesColors";
    case ErrorCode::SelfLoopContraction: return "SelfLoopContraction";
    case ErrorCode::UnsupportedRange: return "UnsupportedRange";
    case ErrorCode::InternalCoverage: return "InternalCoverage";
    case ErrorCode::BadVertexCount: return "BadVertexCount";
    case ErrorCode::VertexReused: return "VertexReused";
    case ErrorCode::AxisAxisChord: return "AxisAxisChord";
    case ErrorCode::AxisNotFirst: return "AxisNotFirst";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Structured failure carrying the violated rule.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bcr
