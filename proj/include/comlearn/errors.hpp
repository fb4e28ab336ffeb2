#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comlearn {

/// Root of every exception the library throws on bad input or an unmet
/// precondition. The CLI maps these to exit status 2, except CycleError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { bad_header, malformed_row, unknown_alternative, ragged_matrix, duplicate_id, bad_document };

  // row/column are 1-based; 0 means "not applicable".
  ParseError(Kind kind, std::size_t row, std::size_t column, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t column_;
};

const char* to_string(ParseError::Kind kind);

class SelectionError : public Error {
 public:
  using Error::Error;
};

/// Operation restricted to a particular number of alternatives.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ComonotonicityError : public Error {
 public:
  using Error::Error;
};

class InfeasibleMarginals : public Error {
 public:
  using Error::Error;
};

} // namespace comlearn
