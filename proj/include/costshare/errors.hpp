#pragma once

#include <stdexcept>
#include <string>

namespace costshare {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input. `path` names the offending field when the
// input came from a file (e.g. "body.metric.matrix[2][1]").
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message, std::string path = {})
      : Error(message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// An enumeration cap would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// No feasible solution exists (e.g. an element no set covers).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A user-supplied cost-sharing method broke its contract (negative share).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Should not happen for conforming inputs.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace costshare
