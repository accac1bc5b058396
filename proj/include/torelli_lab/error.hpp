#pragma once

#include <stdexcept>
#include <string>

namespace torelli {

// Base for every error the library raises. Callers that only need to tell
// "bad input" from "computation failed" catch the two subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact series arithmetic left its exponent window.
class WindowError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical method did not meet its contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Error raised by one stage of a multi-stage pipeline; the stage name is
// kept so reports can say "error:<stage>".
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace torelli
