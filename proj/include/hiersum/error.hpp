#pragma once

#include <stdexcept>
#include <string>

namespace hiersum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad paths, inconsistent flags, unreadable config. Always fatal (exit 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Transport or HTTP-status failure talking to a model endpoint.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int status = 0, bool retryable = false)
      : Error(what), status_(status), retryable_(retryable) {}

  int status() const noexcept { return status_; }
  bool retryable() const noexcept { return retryable_; }

 private:
  int status_;
  bool retryable_;
};

/// The endpoint answered, but not in the shape the protocol promises.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace hiersum
