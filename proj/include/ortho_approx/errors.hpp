#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oapx {

enum class ErrorKind {
  ZeroColumn,
  RankDeficient,
  NotNormalized,
  LossOfOrthogonality,
  ExactlyOrthonormal,
  DimensionMismatch,
  InvalidMatrix,
  ParseError,
  FileNotFound,
  ConfigInvalid,
};

// Base class for every failure raised by the library. Column indices carried
// by the numerical errors are zero-based.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for failures that stem from the numbers themselves rather than from
  // how the program was invoked.
  bool numerical() const noexcept {
    switch (kind_) {
      case ErrorKind::ZeroColumn:
      case ErrorKind::RankDeficient:
      case ErrorKind::NotNormalized:
      case ErrorKind::LossOfOrthogonality:
      case ErrorKind::ExactlyOrthonormal:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

class ColumnError : public Error {
 public:
  ColumnError(ErrorKind kind, std::size_t column, const std::string& what)
      : Error(kind, what + " (column " + std::to_string(column) + ")"),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class ZeroColumn : public ColumnError {
 public:
  explicit ZeroColumn(std::size_t column)
      : ColumnError(ErrorKind::ZeroColumn, column, "column norm below tolerance") {}
};

class RankDeficient : public ColumnError {
 public:
  explicit RankDeficient(std::size_t column)
      : ColumnError(ErrorKind::RankDeficient, column,
                    "Gram-Schmidt residual below rank tolerance") {}
};

class NotNormalized : public ColumnError {
 public:
  explicit NotNormalized(std::size_t column)
      : ColumnError(ErrorKind::NotNormalized, column, "column is not unit norm") {}
};

class LossOfOrthogonality : public Error {
 public:
  LossOfOrthogonality(double defect, double tolerance)
      : Error(ErrorKind::LossOfOrthogonality,
              "orthogonality defect " + std::to_string(defect) +
                  " exceeds tolerance " + std::to_string(tolerance)),
        defect_(defect) {}

  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ExactlyOrthonormal : public Error {
 public:
  ExactlyOrthonormal()
      : Error(ErrorKind::ExactlyOrthonormal,
              "Gram residual is exactly zero; remainder ratios are undefined") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error(ErrorKind::DimensionMismatch,
              "dimension mismatch: expected " + std::to_string(expected) +
                  ", got " + std::to_string(actual)) {}
};

class InvalidMatrix : public Error {
 public:
  explicit InvalidMatrix(const std::string& what)
      : Error(ErrorKind::InvalidMatrix, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t location, const std::string& what)
      : Error(ErrorKind::ParseError,
              source + ":" + std::to_string(location) + ": " + what),
        location_(location) {}

  // Line number for text input, byte offset for binary input.
  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path)
      : Error(ErrorKind::FileNotFound, "cannot open file: " + path) {}
};

class ConfigInvalid : public Error {
 public:
  ConfigInvalid(const std::string& field, const std::string& why)
      : Error(ErrorKind::ConfigInvalid, "invalid --" + field + ": " + why),
        field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace oapx
