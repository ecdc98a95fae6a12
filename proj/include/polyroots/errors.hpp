#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyroots {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeTooLow : public Error {
public:
  using Error::Error;
};

class DegreeTooHigh : public Error {
public:
  using Error::Error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class NoSignChange : public Error {
public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
public:
  using Error::Error;
};

class NotARoot : public Error {
public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
public:
  using Error::Error;
};

class NotEliminable : public Error {
public:
  using Error::Error;
};

class BothZero : public Error {
public:
  using Error::Error;
};

class CandidateOverflow : public Error {
public:
  using Error::Error;
};

/// The bivariate system has a positive-dimensional real solution set.
/// `what()` carries the diagnostic (common line or sign-changing factor).
class InfiniteSolutions : public Error {
public:
  using Error::Error;
};

class IncompleteRootSet : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t column)
      : Error(message + " at column " + std::to_string(column)),
        column_(column) {}

  /// 1-based column of the offending character.
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

} // namespace polyroots
