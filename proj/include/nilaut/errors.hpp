#pragma once

#include <stdexcept>
#include <string>

namespace nilaut {

// Operands carry different generator counts or truncation degrees.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A tensor is not in the span of the Hall expansions.
class NotLieElement : public std::domain_error {
 public:
  NotLieElement(int degree, const std::string& what)
      : std::domain_error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

// A Mal'cev exponent came out non-integral: the element lies in the
// completion but not in the group itself.
class NonIntegralCoordinate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nilaut
