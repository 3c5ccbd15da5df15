#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

enum class ErrorCode {
  InvalidArgument,
  InvalidState,
  Domain,
  Unsupported,
  Tolerance,
  Io,
};

/// Base for every error the library raises. The code maps one-to-one onto
/// the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

class InvalidStateError : public Error {
 public:
  explicit InvalidStateError(const std::string& what)
      : Error(ErrorCode::InvalidState, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error(ErrorCode::Unsupported, what) {}
};

/// A numerical procedure did not reach its requested tolerance. Carries the
/// last two estimates so callers can judge how far off it was.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double previous, double last)
      : Error(ErrorCode::Tolerance, what), previous_(previous), last_(last) {}
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace spinbath
