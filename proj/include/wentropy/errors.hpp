#pragma once

#include <stdexcept>
#include <string>

namespace wentropy {

/// Invalid argument or evaluation outside a declared domain.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// find_root was handed a bracket without a sign change.
class BracketError : public NumericalError {
 public:
  explicit BracketError(const std::string& what) : NumericalError(what) {}
};

/// Malformed distribution spec or job description.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wentropy
