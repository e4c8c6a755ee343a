#pragma once

#include <stdexcept>
#include <string>

namespace gentor {

/// Bad user input: malformed spec, unknown generator, dimension mismatch.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A construction that the theory guarantees to succeed did not. Always a bug.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const std::string& what)
      : std::logic_error("internal theorem violation: " + what) {}
};

/// The backend lacks a capability the operation needs (e.g. abelianization).
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gentor
