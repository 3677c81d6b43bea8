#include "bsfe/error.hpp"

#include <sstream>

namespace bsfe {

std::string formatList(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "]";
}

std::string formatVector(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string formatVector(const std::vector<long>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

VariableMismatch::VariableMismatch(const std::vector<std::string>& lhs, const std::vector<std::string>& rhs)
    : Error("variable lists differ: " + formatList(lhs) + " vs " + formatList(rhs)), lhs_(lhs), rhs_(rhs) {}

ParseError::ParseError(const std::string& what, int line, int column)
    : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

PoleError::PoleError(std::vector<int> exponent)
    : Error("denominator vanishes at exponent " + formatVector(exponent)), exponent_(std::move(exponent)) {}

}  // namespace bsfe
