#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wdrd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: mismatched element sizes, out-of-range vertex ids,
// duplicate arcs, missing relations, non-arcs passed where an arc is needed.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A Cayley connection set containing the identity.
class LoopError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

// Distances were requested on a digraph that is not strongly connected.
class UnreachableError : public Error {
 public:
  UnreachableError(std::size_t from, std::size_t to);

  std::size_t from() const noexcept { return from_; }
  std::size_t to() const noexcept { return to_; }

 private:
  std::size_t from_;
  std::size_t to_;
};

// An operation was called outside its contract (for example a tensor
// criterion on a scheme that is not commutative quasi-thin).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Path enumeration or census exceeded its configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Two computations that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<std::string> violations_;
};

class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Text input that could not be parsed; position is a 0-based offset into
// the offending string.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string input,
             std::size_t position);

  const std::string& input() const noexcept { return input_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string input_;
  std::size_t position_;
};

}  // namespace wdrd
