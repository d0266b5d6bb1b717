#ifndef WORDMAP_ERRORS_HPP
#define WORDMAP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordmap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Presentation or family parameters violate their constraints.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. image not inside Z).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic would leave the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured evaluation budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace wordmap

#endif  // WORDMAP_ERRORS_HPP
