#pragma once

#include <stdexcept>
#include <string>

namespace isopoly {

// Violated mathematical precondition (bad domain, mismatched shapes, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A p-divisible model failed one of its structural gates.
struct ModelViolation : std::runtime_error {
  explicit ModelViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requires a fidelity tier the object does not carry.
struct FidelityError : std::runtime_error {
  explicit FidelityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isopoly
