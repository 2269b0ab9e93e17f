#pragma once

#include <stdexcept>
#include <string>

namespace imvs {

/// A scenario violates one of its structural invariants. `invariant()` is a
/// stable kebab-case name ("budgets-nondecreasing", "popularity-sum", ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, std::string detail)
      : std::runtime_error(invariant + ": " + detail),
        invariant_(std::move(invariant)),
        detail_(std::move(detail)) {}

  const std::string& invariant() const { return invariant_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string invariant_;
  std::string detail_;
};

/// Malformed scenario document. `field` is a JSON pointer-like path.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& detail)
      : std::runtime_error(field + ": " + detail), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// No assignment satisfies the budget constraints (both endpoints must fit in
/// the first layer).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance is too large for the requested exact solver.
class SizeGuardExceeded : public std::runtime_error {
 public:
  SizeGuardExceeded(const std::string& what, double estimate, double cap)
      : std::runtime_error(what), estimate_(estimate), cap_(cap) {}

  double estimate() const { return estimate_; }
  double cap() const { return cap_; }

 private:
  double estimate_;
  double cap_;
};

}  // namespace imvs
