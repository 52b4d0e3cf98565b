#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace oreform {

/// Error categories. The CLI maps each to a distinct exit code.
enum class ErrorKind {
  Domain,        // misuse of an arithmetic operation (zero divisor, mismatched rings, ...)
  Parse,         // malformed input text
  Validate,      // algebra description rejected
  IterationCap,  // an iteration or pair-limit guard fired
  Verify,        // a computed certificate did not check out
  NotSimple,     // Jacobson strengthening requested over a non-simple domain
  Internal,      // a mathematical guarantee was violated; indicates a bug
};

class OreError : public std::runtime_error {
 public:
  OreError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public OreError {
 public:
  explicit DomainError(const std::string& what) : OreError(ErrorKind::Domain, what) {}
};

class ParseError : public OreError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : OreError(ErrorKind::Parse, what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ValidationError : public OreError {
 public:
  enum class Reason { NonInvertibleSigma, IncompatibleDerivation, BadInvolution, Unsupported };

  ValidationError(Reason reason, const std::string& what, std::size_t first = 0,
                  std::size_t second = 0)
      : OreError(ErrorKind::Validate, what), reason_(reason), first_(first), second_(second) {}

  Reason reason() const noexcept { return reason_; }
  /// Offending variable indices (both meaningful only for IncompatibleDerivation).
  std::pair<std::size_t, std::size_t> variables() const noexcept { return {first_, second_}; }

 private:
  Reason reason_;
  std::size_t first_;
  std::size_t second_;
};

class IterationCapExceeded : public OreError {
 public:
  explicit IterationCapExceeded(const std::string& what)
      : OreError(ErrorKind::IterationCap, what) {}
};

class VerificationFailure : public OreError {
 public:
  explicit VerificationFailure(const std::string& what) : OreError(ErrorKind::Verify, what) {}
};

class NotSimpleDomain : public OreError {
 public:
  explicit NotSimpleDomain(const std::string& what) : OreError(ErrorKind::NotSimple, what) {}
};

class InternalError : public OreError {
 public:
  explicit InternalError(const std::string& what) : OreError(ErrorKind::Internal, what) {}
};

}  // namespace oreform
