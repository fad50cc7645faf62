#include "fairscope/error.hpp"

#include <utility>

namespace fairscope {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::NonNumericScore: return "NonNumericScore";
    case ErrorKind::OutOfScale: return "OutOfScale";
    case ErrorKind::DuplicateSubjectId: return "DuplicateSubjectId";
    case ErrorKind::MalformedCsv: return "MalformedCsv";
    case ErrorKind::UnknownGroupLabel: return "UnknownGroupLabel";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::ZeroPooledVariance: return "ZeroPooledVariance";
    case ErrorKind::NoBetweenTargetVariance: return "NoBetweenTargetVariance";
    case ErrorKind::IncompleteMatrix: return "IncompleteMatrix";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::InvalidRule: return "InvalidRule";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidReport: return "InvalidReport";
    case ErrorKind::InputUnavailable: return "InputUnavailable";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

CellError::CellError(ErrorKind kind, std::size_t row, std::string column, const std::string& detail)
    : Error(kind, "row " + std::to_string(row) + ", column '" + column + "': " + detail),
      row_(row),
      column_(std::move(column)) {}

}  // namespace fairscope
