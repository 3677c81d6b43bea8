#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bsfe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands were declared over different variable lists.
class VariableMismatch : public Error {
 public:
  VariableMismatch(const std::vector<std::string>& lhs, const std::vector<std::string>& rhs);
  const std::vector<std::string>& lhs() const { return lhs_; }
  const std::vector<std::string>& rhs() const { return rhs_; }

 private:
  std::vector<std::string> lhs_;
  std::vector<std::string> rhs_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A precondition of an operation does not hold (bad dimensions, wrong kind, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis required by an operation fails (e.g. p divides a lattice index).
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// A graded operator hit a zero of its denominator.
class PoleError : public Error {
 public:
  explicit PoleError(std::vector<int> exponent);
  const std::vector<int>& exponent() const { return exponent_; }

 private:
  std::vector<int> exponent_;
};

/// A configured resource cap (unknown count, enumeration size) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

std::string formatList(const std::vector<std::string>& items);
std::string formatVector(const std::vector<int>& v);
std::string formatVector(const std::vector<long>& v);

}  // namespace bsfe
