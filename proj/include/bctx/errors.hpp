#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bctx {

/// Raised when an operation is invoked outside its documented precondition
/// (e.g. transporting membership across two contexts that are not
/// permutations of each other).
class PreconditionViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Position-carrying parse failure.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnboundIdentifier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class MalformedTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TranslationError : public std::runtime_error {
 public:
  enum class Kind { UnmappedVariable, LinearityViolation };

  TranslationError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Ill-formed `Context` command or lemma statement.
class SpecError : public std::runtime_error {
 public:
  enum class Kind {
    ArityMismatch,
    UnboundVariable,
    DuplicateNablaVar,
    UnusedNablaVar,
    ShapeViolation,
    UnknownContext,
  };

  SpecError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A derivation step was given facts of the wrong form.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& lemma, const std::string& counterexample)
      : std::runtime_error("verification of " + lemma + " failed: " + counterexample),
        counterexample_(counterexample) {}

  const std::string& counterexample() const { return counterexample_; }

 private:
  std::string counterexample_;
};

}  // namespace bctx
