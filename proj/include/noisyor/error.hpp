#pragma once

#include <stdexcept>
#include <string>

namespace noisyor {

/// Base class for domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or compilation would exceed the configured joint-state budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Declared evidence has probability zero (or underflows) under the model.
class ImpossibleEvidenceError : public Error {
 public:
  ImpossibleEvidenceError() : Error("impossible evidence") {}
};

/// The graph contains a directed cycle; member() names one variable on it.
class CycleError : public Error {
 public:
  explicit CycleError(std::string member)
      : Error("cycle detected involving '" + member + "'"),
        member_(std::move(member)) {}
  const std::string& member() const { return member_; }

 private:
  std::string member_;
};

/// Input document is malformed. The message carries line/column where known.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace noisyor
