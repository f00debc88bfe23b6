#pragma once

#include <stdexcept>
#include <string>

namespace branecalc {

/// Base of every error raised by the library. `code()` is a short
/// machine-readable reason used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or mismatched input (bad rank, wrong vector length, syntax).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::string code = "invalid_input")
      : Error(std::move(code), what) {}
};

/// Well-formed input outside an operation's mathematical domain
/// (non-dominant weight, weight that is not a character of Q, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::string code = "domain_error")
      : Error(std::move(code), what) {}
};

/// A one-parameter direction pairs to zero with some isotropy weight.
class GenericityError : public Error {
 public:
  explicit GenericityError(const std::string& what)
      : Error("non_generic_direction", what) {}
};

/// A localization sum still has a pole at q = 1 after cancellation.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error("pole_at_one", what) {}
};

/// An internal invariant failed (negative multiplicity, non-integer index).
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what, std::string code = "consistency")
      : Error(std::move(code), what) {}
};

}  // namespace branecalc
