#pragma once

#include <stdexcept>
#include <string>

namespace abyss {

/// Base of every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point outside [0,1], or an otherwise malformed argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction input (empty set, duplicate members, rationals where
/// only irrationals are allowed, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The function cannot be evaluated pointwise from what it carries.
class NotEvaluable : public Error {
 public:
  using Error::Error;
};

/// A query or algorithm was asked to run on a function whose class tags do not
/// license any sound quantifier collapse. The oracle refuses instead of lying.
class RefusedQuery : public Error {
 public:
  RefusedQuery(std::string required, std::string rule, const std::string& what)
      : Error(what), required_(std::move(required)), rule_(std::move(rule)) {}

  /// The class precondition that was not met, e.g. "quasi-continuous".
  const std::string& required() const noexcept { return required_; }
  /// Identifier of the collapse rule (or rule family) that was consulted.
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string required_;
  std::string rule_;
};

/// The fuel budget ran out before an answer could be certified. Carries the
/// best partial result as human-readable text (e.g. the deepest interval).
class FuelExhausted : public Error {
 public:
  FuelExhausted(const std::string& what, std::string best_so_far)
      : Error(what), best_(std::move(best_so_far)) {}
  const std::string& best_so_far() const noexcept { return best_; }

 private:
  std::string best_;
};

/// A supplied modulus failed a spot check.
class InvalidModulus : public Error {
 public:
  using Error::Error;
};

/// A supplied oracle contradicted itself.
class OracleInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace abyss
