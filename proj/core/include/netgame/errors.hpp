#pragma once

#include <stdexcept>
#include <string>

namespace netgame {

// input text that does not parse / violates the schema (CLI exit code 2)
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// well-formed input outside the rejection-checked domain of an operation
// (CLI exit code 1): bad parameter range, infeasible inputs, etc.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// parameters outside the regime a builder supports (e.g. gamma out of range)
struct RegimeError : DomainError {
  explicit RegimeError(const std::string& msg) : DomainError(msg) {}
};

// a constructive procedure ran out of room / retries and refuses to emit
// a wrong answer
struct ConstructionError : DomainError {
  explicit ConstructionError(const std::string& msg) : DomainError(msg) {}
};

// operation asked for in a parameter regime where its math doesn't apply
// (e.g. the closed-form stability test with a concrete event fee)
struct UnsupportedRegimeError : DomainError {
  explicit UnsupportedRegimeError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace netgame
