#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairscope {

enum class ErrorKind {
  MissingColumn,
  NonNumericScore,
  OutOfScale,
  DuplicateSubjectId,
  MalformedCsv,
  UnknownGroupLabel,
  DegenerateInput,
  TooFewSamples,
  ZeroPooledVariance,
  NoBetweenTargetVariance,
  IncompleteMatrix,
  InvalidK,
  InvalidRule,
  LengthMismatch,
  SingleClass,
  UnknownColumn,
  InvalidSpec,
  InvalidConfig,
  InvalidReport,
  InputUnavailable,
};

const char* to_string(ErrorKind kind);

/// Base for every error raised by the library. The kind is stable and is what
/// tests and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Input error that can be traced to a cell of the CSV source. Rows are
/// 1-based data rows (the header is not counted).
class CellError : public Error {
 public:
  CellError(ErrorKind kind, std::size_t row, std::string column, const std::string& detail);

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

}  // namespace fairscope
