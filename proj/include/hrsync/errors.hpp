#pragma once

#include <stdexcept>
#include <string>

namespace hrsync {

/// Non-finite input or a violated divisor guard (a = 0, m*s = 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad arguments: unknown parameter names, invalid windows, bad config keys.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integration left the bounded region or produced a non-finite value.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, const std::string& what)
      : std::runtime_error(what + " at t=" + std::to_string(t)), t_(t) {}

  double time() const noexcept { return t_; }

 private:
  double t_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hrsync
