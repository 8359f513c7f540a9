#pragma once

#include <stdexcept>
#include <string>

namespace sepfol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CaptureError : public Error {
 public:
  using Error::Error;
};

class ArityConflict : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

class NonSentence : public Error {
 public:
  using Error::Error;
};

class NotPrenex : public Error {
 public:
  using Error::Error;
};

class SeparationError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotSF : public Error {
 public:
  using Error::Error;
};

class IneligibleOccurrence : public Error {
 public:
  using Error::Error;
};

class NotRelationalMonadic : public Error {
 public:
  using Error::Error;
};

class MissingInterpretation : public Error {
 public:
  using Error::Error;
};

}  // namespace sepfol
